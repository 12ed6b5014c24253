#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "stretchmetrics/types.hpp"

namespace stretchmetrics {

struct StrainSample {
    double t_s = 0.0;
    double strain = 0.0;
};

/// Merges the two instrument streams onto the resistance timebase
/// restricted to their overlap. Displacement and force are linearly
/// interpolated; resistance is never interpolated (that would smooth
/// hysteresis). strain = displacement / gauge length,
/// dR/R = (R - R0)/R0 with R0 from baseline_resistance.
SyncedTrace synchronize(const ResistanceTrace& r, const TensileTrace& ten,
                        const TestConfig& cfg);

/// Strain axis alone, on the tensile timebase (stretch-to-failure view).
std::vector<StrainSample> strain_only(const TensileTrace& ten,
                                      const TestConfig& cfg);

/// Wraps a lone resistance log as a SyncedTrace with zero strain and no
/// force; used for joint-angle estimation where no tensile data exists.
SyncedTrace resistance_only(const ResistanceTrace& r, const TestConfig& cfg);

std::string synced_csv(const SyncedTrace& trace);
void write_synced_csv(const SyncedTrace& trace,
                      const std::filesystem::path& path);

}  // namespace stretchmetrics
