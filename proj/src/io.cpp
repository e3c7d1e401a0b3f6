#include "burgers/io.hpp"

#include <array>
#include <bit>
#include <cstring>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <json.hpp>

namespace burgers {

namespace {

constexpr std::uint32_t kTimeTagBit = 0x80000000u;

void put_u32_le(std::ostream& os, std::uint32_t v) {
  std::array<unsigned char, 4> b{static_cast<unsigned char>(v & 0xFF),
                                 static_cast<unsigned char>((v >> 8) & 0xFF),
                                 static_cast<unsigned char>((v >> 16) & 0xFF),
                                 static_cast<unsigned char>((v >> 24) & 0xFF)};
  os.write(reinterpret_cast<const char*>(b.data()), 4);
}

std::uint32_t get_u32_le(std::istream& is) {
  std::array<unsigned char, 4> b{};
  is.read(reinterpret_cast<char*>(b.data()), 4);
  return static_cast<std::uint32_t>(b[0]) | (static_cast<std::uint32_t>(b[1]) << 8) |
         (static_cast<std::uint32_t>(b[2]) << 16) | (static_cast<std::uint32_t>(b[3]) << 24);
}

void put_f64_le(std::ostream& os, double v) {
  std::uint64_t u = std::bit_cast<std::uint64_t>(v);
  std::array<unsigned char, 8> b{};
  for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>((u >> (8 * i)) & 0xFF);
  os.write(reinterpret_cast<const char*>(b.data()), 8);
}

double get_f64_le(std::istream& is) {
  std::array<unsigned char, 8> b{};
  is.read(reinterpret_cast<char*>(b.data()), 8);
  std::uint64_t u = 0;
  for (int i = 0; i < 8; ++i) u |= static_cast<std::uint64_t>(b[i]) << (8 * i);
  return std::bit_cast<double>(u);
}

}  // namespace

void write_spf1(const std::filesystem::path& path, const SpectralField& f) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw IoError("cannot open for writing: " + path.string());
  os.write("SPF1", 4);
  std::uint32_t header = f.cutoff;
  if (f.time_tag) header |= kTimeTagBit;
  put_u32_le(os, header);
  for (std::uint32_t k = 1; k <= f.cutoff; ++k) {
    put_f64_le(os, f.coeff(k).real());
    put_f64_le(os, f.coeff(k).imag());
  }
  if (f.time_tag) put_f64_le(os, *f.time_tag);
  if (!os) throw IoError("write failed: " + path.string());
}

SpectralField read_spf1(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw IoError("cannot open for reading: " + path.string());
  char magic[4];
  is.read(magic, 4);
  if (!is || std::memcmp(magic, "SPF1", 4) != 0) throw IoError("bad magic in " + path.string());
  std::uint32_t header = get_u32_le(is);
  bool tagged = (header & kTimeTagBit) != 0;
  std::uint32_t K = header & ~kTimeTagBit;
  SpectralField f(K);
  for (std::uint32_t k = 1; k <= K; ++k) {
    double re = get_f64_le(is);
    double im = get_f64_le(is);
    f.set_coeff(k, {re, im});
  }
  if (tagged) f.time_tag = get_f64_le(is);
  if (!is) throw IoError("truncated field file: " + path.string());
  return f;
}

void write_field_csv(const std::filesystem::path& path, const SpectralField& f) {
  std::ofstream os(path);
  if (!os) throw IoError("cannot open for writing: " + path.string());
  os << "k,re,im\n";
  os << std::setprecision(17);
  for (std::uint32_t k = 1; k <= f.cutoff; ++k)
    os << k << "," << f.coeff(k).real() << "," << f.coeff(k).imag() << "\n";
}

namespace {

struct SeriesColumn {
  std::string name;
  const FieldPath* path;
};

void write_series_csv(const std::filesystem::path& file, const std::vector<SeriesColumn>& cols) {
  std::ofstream os(file);
  if (!os) throw IoError("cannot open for writing: " + file.string());
  os << "time";
  for (const auto& c : cols) os << "," << c.name << "_l2," << c.name << "_sup," << c.name << "_dead";
  os << "\n";
  os << std::setprecision(17);
  const std::size_t M = cols.empty() ? 0 : cols[0].path->size();
  for (std::size_t m = 0; m < M; ++m) {
    os << cols[0].path->times[m];
    for (const auto& c : cols) {
      const FieldState& st = c.path->states[m];
      if (is_dead(st)) {
        os << ",nan,nan,1";
      } else {
        os << "," << l2_norm(as_field(st)) << "," << sup_norm(as_field(st)) << ",0";
      }
    }
    os << "\n";
  }
}

void write_snapshots(const std::filesystem::path& dir, const std::string& name,
                     const FieldPath& path, int every) {
  if (every <= 0) return;
  for (std::size_t m = 0; m < path.size(); m += static_cast<std::size_t>(every)) {
    if (is_dead(path.states[m])) continue;
    SpectralField f = as_field(path.states[m]);
    f.time_tag = path.times[m];
    std::ostringstream fn;
    fn << name << "_" << std::setw(6) << std::setfill('0') << m << ".spf1";
    write_spf1(dir / fn.str(), f);
  }
}

void write_common(const std::filesystem::path& dir, const SystemConfig& cfg,
                  const RunArtifactConfig& art) {
  std::filesystem::create_directories(dir);
  {
    std::ofstream os(dir / "plan.json");
    os << plan_to_json(cfg.plan) << "\n";
  }
  {
    std::ofstream os(dir / "config.json");
    os << config_to_json(cfg, art) << "\n";
  }
}

}  // namespace

void write_run_artifacts(const std::filesystem::path& dir, const SystemConfig& cfg,
                         const RunArtifactConfig& art, const FieldPath& direct) {
  write_common(dir, cfg, art);
  write_series_csv(dir / "series.csv", {{"u", &direct}});
  write_snapshots(dir, "u", direct, art.snapshot_every);
}

void write_run_artifacts(const std::filesystem::path& dir, const SystemConfig& cfg,
                         const RunArtifactConfig& art, const LevelRun& run) {
  write_common(dir, cfg, art);
  std::vector<SeriesColumn> cols;
  std::vector<std::string> names;
  names.reserve(run.levels.size());
  for (std::size_t i = 0; i < run.levels.size(); ++i) names.push_back("X" + std::to_string(i));
  for (std::size_t i = 0; i < run.levels.size(); ++i) cols.push_back({names[i], &run.levels[i]});
  cols.push_back({"R", &run.remainder});
  cols.push_back({"sum", &run.sum});
  if (run.eta) cols.push_back({"eta", &*run.eta});
  if (run.rho) cols.push_back({"rho", &*run.rho});
  write_series_csv(dir / "series.csv", cols);
  for (std::size_t i = 0; i < run.levels.size(); ++i)
    write_snapshots(dir, names[i], run.levels[i], art.snapshot_every);
  write_snapshots(dir, "R", run.remainder, art.snapshot_every);
  write_snapshots(dir, "sum", run.sum, art.snapshot_every);
}

std::string config_to_json(const SystemConfig& cfg, const RunArtifactConfig& art) {
  nlohmann::json j;
  j["alpha"] = cfg.plan.alpha;
  j["K"] = cfg.cutoff;
  j["dt"] = cfg.dt;
  j["T"] = cfg.horizon;
  j["seed"] = cfg.seed;
  j["blowup_threshold"] = cfg.blowup_threshold;
  j["system"] = art.system;
  j["snapshot_every"] = art.snapshot_every;
  return j.dump(2);
}

void parse_config_json(const std::string& text, double& alpha, SystemConfig& cfg,
                       RunArtifactConfig& art) {
  nlohmann::json j = nlohmann::json::parse(text);
  alpha = j.at("alpha").get<double>();
  std::uint32_t K = j.at("K").get<std::uint32_t>();
  cfg.cutoff = K;
  cfg.dt = j.value("dt", 1e-3);
  cfg.horizon = j.value("T", 1.0);
  cfg.seed = j.value("seed", std::uint64_t{0});
  cfg.blowup_threshold = j.value("blowup_threshold", 1e8);
  cfg.u0 = SpectralField(K);
  cfg.z0 = SpectralField(K);
  cfg.plan = materialize_spectra(plan_schedule(alpha), K);
  art.system = j.value("system", std::string("direct"));
  art.snapshot_every = j.value("snapshot_every", 0);
}

}  // namespace burgers
