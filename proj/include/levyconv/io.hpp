#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "levyconv/lawlab.hpp"
#include "levyconv/path.hpp"
#include "levyconv/prm.hpp"
#include "levyconv/projections.hpp"
#include "levyconv/scenario.hpp"
#include "levyconv/skorokhod.hpp"
#include "levyconv/stochint.hpp"

namespace levyconv {

/// Shortest round-trip form is not needed; numbers are written with 17
/// significant digits so repeated runs produce identical bytes.
std::string format_number(double x);

Json read_json_file(const std::string& path);
std::string read_text_file(const std::string& path);

/// time,mark
void write_realization_csv(std::ostream& out, const PrmRealization& eta);
/// draw,time,mark
void write_realizations_csv(std::ostream& out, const std::vector<PrmRealization>& draws);
/// t,v1..vd
void write_path_csv(std::ostream& out, const GridPath& path);
/// t,v1..vd with one row at 0 and one per jump.
void write_step_path_csv(std::ostream& out, const PiecewiseConstPath& path);
/// t,v1..vd with one row per cell (left end of the cell).
void write_sampled_csv(std::ostream& out, const SampledFunction& f);
/// t,lambda
void write_time_change_csv(std::ostream& out, const TimeChange& lambda);
/// Square matrix with a header row and a label column.
void write_matrix_csv(std::ostream& out, const Matrix& m, const std::vector<std::string>& labels);
/// name,ks_statistic,ks_p_value
void write_ks_csv(std::ostream& out, const TestReport& report);

/// Step path from rows t,v1..vd (first row at t = 0 holds the initial value).
PiecewiseConstPath read_step_path_csv(std::istream& in, double horizon);
/// Several step paths from rows path,t,v1..vd, in order of first appearance.
std::vector<PiecewiseConstPath> read_step_paths_csv(std::istream& in, double horizon,
                                                    std::vector<std::string>* ids = nullptr);

Json report_to_json(const TestReport& report);

}  // namespace levyconv
