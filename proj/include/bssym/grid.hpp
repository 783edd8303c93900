// Rectangular (time x space) lattices and discretized solutions on them.

#ifndef BSSYM_GRID_HPP_
#define BSSYM_GRID_HPP_

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

namespace bssym {

// log: the spatial axis is x = ln S; price: it is S itself.
enum class Frame { log, price };

std::string to_string(Frame f);

class Grid {
public:
  // Both axes ascending with at least 3 nodes. Throws std::domain_error.
  Grid(std::vector<double> t_values, std::vector<double> space_values);

  // n nodes from lo to hi inclusive.
  static Grid uniform(double t_lo, double t_hi, std::size_t nt, double s_lo, double s_hi, std::size_t ns);
  // Nodes lo, lo + h, ... up to the last one not beyond hi (1e-9 relative slack).
  static Grid with_spacing(double t_lo, double t_hi, double dt, double s_lo, double s_hi, double ds);

  const std::vector<double>& t_values() const { return t_; }
  const std::vector<double>& space_values() const { return s_; }
  std::size_t nt() const { return t_.size(); }
  std::size_t ns() const { return s_.size(); }
  std::size_t size() const { return t_.size() * s_.size(); }

  // Uniform within 1e-9 relative to the mean spacing.
  bool uniform_t() const;
  bool uniform_space() const;
  double dt() const { return (t_.back() - t_.front()) / static_cast<double>(t_.size() - 1); }
  double ds() const { return (s_.back() - s_.front()) / static_cast<double>(s_.size() - 1); }

private:
  std::vector<double> t_;
  std::vector<double> s_;
};

class GridSolution {
public:
  // Values are row-major by time: values[i * ns + j] at (t_i, s_j).
  GridSolution(Grid grid, std::vector<double> values, Frame frame);

  const Grid& grid() const { return grid_; }
  Frame frame() const { return frame_; }
  const std::vector<double>& values() const { return values_; }
  double at(std::size_t i, std::size_t j) const { return values_[i * grid_.ns() + j]; }
  double max_abs() const;

private:
  Grid grid_;
  std::vector<double> values_;
  Frame frame_;
};

// phi(t, x) = C(t, e^x) node by node. Throws std::domain_error for S <= 0.
GridSolution to_log_frame(const GridSolution& price);
GridSolution from_log_frame(const GridSolution& log);

// Header "t,x,value" (log) or "t,S,value" (price), one node per line,
// row-major by time, 17 significant digits.
void write_csv(std::ostream& out, const GridSolution& sol);
GridSolution read_csv(std::istream& in);

}  // namespace bssym

#endif  // BSSYM_GRID_HPP_
