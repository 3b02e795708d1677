#pragma once

#include "rescon/nussbaum.hpp"
#include "rescon/simulator.hpp"
#include "rescon/sweep.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace rescon {

/// Columns t, y_i, s_i, x2_i, u_i, L_i, F1_i, F2_i, E; with `verbose` also
/// e_i, z1_i, z2_i, v1_i, Phi2_i, ycheck_i, x2check_i, uapplied_i (1-based i).
std::vector<std::string> trace_header(std::size_t agents, bool verbose);
void write_trace_csv(std::ostream& out, const SimTrace& trace, bool verbose);

std::string summary_json(const Summary& s, int indent = 2);

/// Columns value, E_final, T_s, bounded, omega_bound (T_s empty when never
/// reached).
void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows);

/// Columns index, w_pos, w_neg, log_Sp, log_neg_Sn, ratio1, ratio2,
/// log_lobe_ratio, log_lobe_bound, followed by a verdict comment line.
void write_ratio_csv(std::ostream& out, const RatioReport& report);

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;

    /// Index of a column, or -1.
    int column(const std::string& name) const;
    std::vector<double> values(int column) const;
};

/// Reads a numeric CSV with one header row; '#' lines are skipped and empty
/// cells read as NaN.
CsvTable read_csv(std::istream& in);

}  // namespace rescon
