#include "levyconv/io.hpp"

#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "levyconv/error.hpp"

namespace levyconv {

std::string format_number(double x) {
  if (x == 0.0) return "0";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("cannot open '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

Json read_json_file(const std::string& path) {
  try {
    return Json::parse(read_text_file(path));
  } catch (const nlohmann::json::parse_error& e) {
    throw InvalidInput("'" + path + "' is not valid JSON: " + e.what());
  }
}

namespace {

void write_header(std::ostream& out, const char* first, std::size_t dimension) {
  out << first;
  for (std::size_t i = 1; i <= dimension; ++i) out << ",v" << i;
  out << '\n';
}

void write_row(std::ostream& out, double t, const Vector& v) {
  out << format_number(t);
  for (Eigen::Index i = 0; i < v.size(); ++i) out << ',' << format_number(v(i));
  out << '\n';
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> cells;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

double parse_number(const std::string& s) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size() && s.find_first_not_of(" \r\t", used) != std::string::npos) {
      throw InvalidInput("malformed number '" + s + "'");
    }
    return v;
  } catch (const std::logic_error&) {
    throw InvalidInput("malformed number '" + s + "'");
  }
}

struct RawPath {
  std::vector<double> times;
  std::vector<Vector> values;
};

PiecewiseConstPath build_path(const RawPath& raw, double horizon) {
  if (raw.times.empty() || raw.times.front() != 0.0) {
    throw InvalidInput("step path CSV: first row must be at t = 0");
  }
  std::vector<double> times(raw.times.begin() + 1, raw.times.end());
  std::vector<Vector> values(raw.values.begin() + 1, raw.values.end());
  return PiecewiseConstPath(raw.values.front(), std::move(times), std::move(values), horizon);
}

}  // namespace

void write_realization_csv(std::ostream& out, const PrmRealization& eta) {
  out << "time,mark\n";
  for (const Atom& a : eta.atoms()) {
    out << format_number(a.time) << ',' << eta.space().marks()[a.mark] << '\n';
  }
}

void write_realizations_csv(std::ostream& out, const std::vector<PrmRealization>& draws) {
  out << "draw,time,mark\n";
  for (std::size_t d = 0; d < draws.size(); ++d) {
    for (const Atom& a : draws[d].atoms()) {
      out << d << ',' << format_number(a.time) << ',' << draws[d].space().marks()[a.mark] << '\n';
    }
  }
}

void write_path_csv(std::ostream& out, const GridPath& path) {
  write_header(out, "t", path.dimension());
  for (std::size_t i = 0; i < path.size(); ++i) write_row(out, path.times[i], path.value(i));
}

void write_step_path_csv(std::ostream& out, const PiecewiseConstPath& path) {
  write_header(out, "t", path.dimension());
  write_row(out, 0.0, path.initial());
  for (std::size_t k = 0; k < path.jump_count(); ++k) {
    write_row(out, path.jump_times()[k], path.values()[k]);
  }
}

void write_sampled_csv(std::ostream& out, const SampledFunction& f) {
  write_header(out, "t", f.dimension());
  for (std::size_t i = 0; i < f.cells(); ++i) {
    write_row(out, static_cast<double>(i) * f.cell_width(), f.values().col(static_cast<Eigen::Index>(i)));
  }
}

void write_time_change_csv(std::ostream& out, const TimeChange& lambda) {
  out << "t,lambda\n";
  for (std::size_t i = 0; i < lambda.times().size(); ++i) {
    out << format_number(lambda.times()[i]) << ',' << format_number(lambda.images()[i]) << '\n';
  }
}

void write_matrix_csv(std::ostream& out, const Matrix& m, const std::vector<std::string>& labels) {
  out << "path";
  for (const auto& l : labels) out << ',' << l;
  out << '\n';
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    out << labels.at(static_cast<std::size_t>(i));
    for (Eigen::Index j = 0; j < m.cols(); ++j) out << ',' << format_number(m(i, j));
    out << '\n';
  }
}

void write_ks_csv(std::ostream& out, const TestReport& report) {
  out << "name,ks_statistic,ks_p_value\n";
  for (const auto& k : report.ks) {
    out << k.name << ',' << format_number(k.statistic) << ',' << format_number(k.p_value) << '\n';
  }
}

PiecewiseConstPath read_step_path_csv(std::istream& in, double horizon) {
  std::string line;
  if (!std::getline(in, line)) throw InvalidInput("step path CSV: empty input");
  RawPath raw;
  std::size_t width = 0;
  while (std::getline(in, line)) {
    if (line.empty() || line == "\r") continue;
    const auto cells = split(line);
    if (cells.size() < 2) throw InvalidInput("step path CSV: need t and at least one value");
    if (width == 0) width = cells.size();
    if (cells.size() != width) throw InvalidInput("step path CSV: ragged rows");
    raw.times.push_back(parse_number(cells[0]));
    Vector v(static_cast<Eigen::Index>(cells.size() - 1));
    for (std::size_t i = 1; i < cells.size(); ++i) v(static_cast<Eigen::Index>(i - 1)) = parse_number(cells[i]);
    raw.values.push_back(std::move(v));
  }
  return build_path(raw, horizon);
}

std::vector<PiecewiseConstPath> read_step_paths_csv(std::istream& in, double horizon,
                                                    std::vector<std::string>* ids) {
  std::string line;
  if (!std::getline(in, line)) throw InvalidInput("paths CSV: empty input");
  std::vector<std::string> order;
  std::map<std::string, RawPath> raw;
  std::size_t width = 0;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto cells = split(line);
    if (cells.size() < 3) throw InvalidInput("paths CSV: need path, t and at least one value");
    if (width == 0) width = cells.size();
    if (cells.size() != width) throw InvalidInput("paths CSV: ragged rows");
    if (!raw.contains(cells[0])) order.push_back(cells[0]);
    RawPath& r = raw[cells[0]];
    r.times.push_back(parse_number(cells[1]));
    Vector v(static_cast<Eigen::Index>(cells.size() - 2));
    for (std::size_t i = 2; i < cells.size(); ++i) v(static_cast<Eigen::Index>(i - 2)) = parse_number(cells[i]);
    r.values.push_back(std::move(v));
  }
  std::vector<PiecewiseConstPath> paths;
  for (const auto& id : order) paths.push_back(build_path(raw.at(id), horizon));
  if (ids) *ids = order;
  return paths;
}

Json report_to_json(const TestReport& report) {
  Json ks = Json::array();
  for (const auto& k : report.ks) {
    ks.push_back({{"name", k.name}, {"statistic", k.statistic}, {"p_value", k.p_value}});
  }
  return Json{
      {"energy_statistic", report.energy_statistic},
      {"p_value", report.p_value},
      {"permutations", report.permutations},
      {"permutation_seed", report.permutation_seed},
      {"ks", ks},
      {"a", {{"samples", report.samples_a}, {"seed", report.seed_a}, {"digest", report.digest_a},
             {"construction", report.construction_a}}},
      {"b", {{"samples", report.samples_b}, {"seed", report.seed_b}, {"digest", report.digest_b},
             {"construction", report.construction_b}}},
      {"forced", report.forced},
  };
}

}  // namespace levyconv
