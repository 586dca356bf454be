#pragma once

#include "travwave/continuation.hpp"
#include "travwave/diagnostics.hpp"
#include "travwave/evolution.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace travwave::io {

namespace fs = std::filesystem;

/// 17 significant digits, which reads back to the same double.
std::string format_double(double v);

void ensure_directory(const fs::path& dir);
void write_text(const fs::path& path, const std::string& text);
std::string read_text(const fs::path& path);

/// `x,phi` on the half-period nodes.
void write_profile(const fs::path& path, const Wave& wave);
/// Reads a profile written by write_profile. The node abscissae must match
/// the grid of period `length` to 1e-9 relative.
Wave read_profile(const fs::path& path, double length);

/// Layout: <dir>/branch.csv plus <dir>/profiles/point_NNNNN.csv.
void write_branch(const fs::path& dir, const Branch& branch);
Branch read_branch(const fs::path& dir, const Equation& equation, const BoundaryCondition& bc);

std::string branch_report_json(const Branch& branch, const BranchReport& report);
std::string summary_csv(const Branch& branch, const BranchReport& report);

/// Two panels: waveheight and L^2 norm against the speed.
std::string branch_svg(const Branch& branch, const BranchReport& report);

/// <dir>/snapshots/snap_NNNNN.csv and <dir>/index.csv (t,file,mass,momentum,max_u).
void write_trajectory(const fs::path& dir, const Trajectory& trajectory);

} // namespace travwave::io
