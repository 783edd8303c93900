#include "bssym/grid.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace bssym {

namespace {

void check_axis(const std::vector<double>& v, const char* name) {
  if (v.size() < 3) throw std::domain_error(std::string(name) + " axis needs at least 3 nodes");
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!std::isfinite(v[i])) throw std::domain_error(std::string(name) + " axis has a non-finite node");
    if (i > 0 && !(v[i] > v[i - 1])) throw std::domain_error(std::string(name) + " axis is not strictly ascending");
  }
}

bool is_uniform(const std::vector<double>& v) {
  double h = (v.back() - v.front()) / static_cast<double>(v.size() - 1);
  for (std::size_t i = 1; i < v.size(); ++i)
    if (std::abs((v[i] - v[i - 1]) - h) > 1e-9 * std::abs(h)) return false;
  return true;
}

std::vector<double> linspace(double lo, double hi, std::size_t n) {
  if (n < 3) throw std::domain_error("an axis needs at least 3 nodes");
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i)
    v[i] = i + 1 == n ? hi : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
  return v;
}

std::vector<double> spaced(double lo, double hi, double h) {
  if (!(h > 0.0)) throw std::domain_error("grid spacing must be positive");
  auto steps = static_cast<std::size_t>(std::floor((hi - lo) / h * (1.0 + 1e-9)));
  std::vector<double> v(steps + 1);
  for (std::size_t i = 0; i <= steps; ++i) v[i] = lo + h * static_cast<double>(i);
  return v;
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

std::string to_string(Frame f) { return f == Frame::log ? "log" : "price"; }

Grid::Grid(std::vector<double> t_values, std::vector<double> space_values)
    : t_(std::move(t_values)), s_(std::move(space_values)) {
  check_axis(t_, "time");
  check_axis(s_, "space");
}

Grid Grid::uniform(double t_lo, double t_hi, std::size_t nt, double s_lo, double s_hi, std::size_t ns) {
  return Grid(linspace(t_lo, t_hi, nt), linspace(s_lo, s_hi, ns));
}

Grid Grid::with_spacing(double t_lo, double t_hi, double dt, double s_lo, double s_hi, double ds) {
  return Grid(spaced(t_lo, t_hi, dt), spaced(s_lo, s_hi, ds));
}

bool Grid::uniform_t() const { return is_uniform(t_); }
bool Grid::uniform_space() const { return is_uniform(s_); }

GridSolution::GridSolution(Grid grid, std::vector<double> values, Frame frame)
    : grid_(std::move(grid)), values_(std::move(values)), frame_(frame) {
  if (values_.size() != grid_.size()) throw std::domain_error("value count does not match the grid");
  for (double v : values_)
    if (!std::isfinite(v)) throw std::domain_error("grid solution has a non-finite value");
  if (frame_ == Frame::price && grid_.space_values().front() <= 0.0)
    throw std::domain_error("price-frame grid needs positive S nodes");
}

double GridSolution::max_abs() const {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

GridSolution to_log_frame(const GridSolution& price) {
  if (price.frame() != Frame::price) throw std::domain_error("to_log_frame expects a price-frame solution");
  std::vector<double> x;
  for (double S : price.grid().space_values()) {
    if (!(S > 0.0)) throw std::domain_error("non-positive S node");
    x.push_back(std::log(S));
  }
  return GridSolution(Grid(price.grid().t_values(), std::move(x)), price.values(), Frame::log);
}

GridSolution from_log_frame(const GridSolution& log) {
  if (log.frame() != Frame::log) throw std::domain_error("from_log_frame expects a log-frame solution");
  std::vector<double> S;
  for (double x : log.grid().space_values()) S.push_back(std::exp(x));
  return GridSolution(Grid(log.grid().t_values(), std::move(S)), log.values(), Frame::price);
}

void write_csv(std::ostream& out, const GridSolution& sol) {
  out << "t," << (sol.frame() == Frame::log ? "x" : "S") << ",value\n";
  const auto& t = sol.grid().t_values();
  const auto& s = sol.grid().space_values();
  for (std::size_t i = 0; i < t.size(); ++i)
    for (std::size_t j = 0; j < s.size(); ++j)
      out << format_double(t[i]) << ',' << format_double(s[j]) << ',' << format_double(sol.at(i, j)) << '\n';
}

GridSolution read_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw std::domain_error("empty CSV");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  Frame frame;
  if (line == "t,x,value") {
    frame = Frame::log;
  } else if (line == "t,S,value") {
    frame = Frame::price;
  } else {
    throw std::domain_error("unexpected CSV header '" + line + "'");
  }
  std::vector<double> t, s, values;
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty() || line == "\r") continue;
    std::istringstream ls(line);
    double tv, sv, vv;
    char c1, c2;
    if (!(ls >> tv >> c1 >> sv >> c2 >> vv) || c1 != ',' || c2 != ',')
      throw std::domain_error("malformed CSV row " + std::to_string(row));
    if (t.empty() || tv != t.back()) t.push_back(tv);
    if (t.size() == 1) s.push_back(sv);
    values.push_back(vv);
  }
  if (t.empty() || s.empty() || values.size() != t.size() * s.size())
    throw std::domain_error("CSV does not describe a full rectangular grid");
  return GridSolution(Grid(std::move(t), std::move(s)), std::move(values), frame);
}

}  // namespace bssym
