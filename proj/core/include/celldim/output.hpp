#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "celldim/experiments.hpp"

namespace celldim {

enum class OutputFormat { csv, json, both };

struct RunInfo {
  std::string experiment;
  std::string scenario;
  std::uint64_t seed = 0;
};

/// Writes to a temporary sibling and renames it over `path`, so readers
/// never observe a partial file.
void write_file_atomic(std::filesystem::path const& path, std::string const& content);

/// Shortest round-trip-safe text for a double; "inf"/"nan" for non-finite.
std::string format_number(double value);

std::string sweep_csv(SweepResult const& result);
std::string sweep_json(SweepResult const& result, RunInfo const& info);
std::string dimension_csv(std::vector<DimensionRecord> const& records);
std::string dimension_json(std::vector<DimensionRecord> const& records, DimensionConfig const& config,
                           RunInfo const& info);
std::string scale_check_csv(ScaleCheckResult const& result);
std::string scale_check_json(ScaleCheckResult const& result, RunInfo const& info);
std::string composite_csv(CompositeRun const& run);
std::string composite_json(CompositeRun const& run, RunInfo const& info);

/// Each emitter throws std::invalid_argument on an empty record set before
/// touching the file system, then writes `<dir>/<stem>.csv` and/or `.json`.
std::vector<std::filesystem::path> emit(SweepResult const& result, RunInfo const& info,
                                        std::filesystem::path const& dir, OutputFormat format);
std::vector<std::filesystem::path> emit(std::vector<DimensionRecord> const& records,
                                        DimensionConfig const& config, RunInfo const& info,
                                        std::filesystem::path const& dir, OutputFormat format);
std::vector<std::filesystem::path> emit(ScaleCheckResult const& result, RunInfo const& info,
                                        std::filesystem::path const& dir, OutputFormat format);
std::vector<std::filesystem::path> emit(CompositeRun const& run, RunInfo const& info,
                                        std::filesystem::path const& dir, OutputFormat format);

}  // namespace celldim
