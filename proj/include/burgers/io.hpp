#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>

#include "burgers/field.hpp"
#include "burgers/solver.hpp"

namespace burgers {

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Binary field format "SPF1": magic, little-endian u32 K (top bit flags a
/// trailing f64 time tag), then K little-endian (re, im) f64 pairs.
void write_spf1(const std::filesystem::path& path, const SpectralField& f);
SpectralField read_spf1(const std::filesystem::path& path);

/// CSV with columns k, re, im.
void write_field_csv(const std::filesystem::path& path, const SpectralField& f);

struct RunArtifactConfig {
  std::string system = "direct";  // direct | frak | x
  int snapshot_every = 0;         // 0 disables field snapshots
};

/// Directory layout: plan.json, config.json, series.csv (time, per-path L2
/// and sup norms, death flags), plus snapshot .spf1 fields on the cadence.
void write_run_artifacts(const std::filesystem::path& dir, const SystemConfig& cfg,
                         const RunArtifactConfig& art, const FieldPath& direct);
void write_run_artifacts(const std::filesystem::path& dir, const SystemConfig& cfg,
                         const RunArtifactConfig& art, const LevelRun& run);

std::string config_to_json(const SystemConfig& cfg, const RunArtifactConfig& art);
void parse_config_json(const std::string& text, double& alpha, SystemConfig& cfg,
                       RunArtifactConfig& art);

}  // namespace burgers
