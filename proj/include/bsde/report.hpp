#pragma once

#include <filesystem>
#include <string>

#include "bsde/analysis.hpp"

namespace bsde {

/// File name stem "<problem>_<alpha>" used for study artifacts.
std::string report_stem(const ConvergenceReport& report);

/// Writes the study as CSV: header N,h,err_y,err_z,runtime_s, one data row
/// per N, then footer rows CR_y,<value> and CR_z,<value> (value "NA" when the
/// rate is absent). Numbers carry 17 significant digits so that parsing the
/// file recovers them exactly. Throws NumericalError on I/O failure, with the
/// path in the message.
void write_report_csv(const ConvergenceReport& report, const std::filesystem::path& file);

/// Parses a CSV produced by write_report_csv (round-trip of the numeric
/// fields is exact). Problem name and alpha are not stored in the file and
/// stay empty/zero.
ConvergenceReport read_report_csv(const std::filesystem::path& file);

/// Log-log scatter of err_y and err_z against h with least-squares fit lines
/// and a slope-2 reference, as a self-contained SVG.
void write_report_svg(const ConvergenceReport& report, const std::filesystem::path& file);

}  // namespace bsde
