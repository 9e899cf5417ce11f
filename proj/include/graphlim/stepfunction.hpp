#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "graphlim/graph.hpp"

namespace graphlim {

// Symmetric kernel constant on products of k consecutive intervals of the
// stated measures. Shared representation for graphons (values in [0,1]) and
// signed differences (values in [-1,1]).
class StepKernel {
 public:
  std::size_t parts() const noexcept { return measures_.size(); }
  double measure(std::size_t i) const { return measures_[i]; }
  double value(std::size_t i, std::size_t j) const { return values_[i * parts() + j]; }
  std::span<const double> measures() const noexcept { return measures_; }
  // Row-major k*k.
  std::span<const double> values() const noexcept { return values_; }

  double integral() const;
  bool has_equal_parts(double tol = 1e-12) const;
  // Right end of part i when parts are laid out in order on [0,1].
  std::vector<double> boundaries() const;

  bool operator==(const StepKernel&) const = default;

 protected:
  StepKernel(std::vector<double> measures, std::vector<double> values, double lo, double hi);

  std::vector<double> measures_;
  std::vector<double> values_;
};

class SignedStepfunction;

class Stepfunction : public StepKernel {
 public:
  Stepfunction(std::vector<double> measures, std::vector<double> values);

  static Stepfunction constant(double p);
  static Stepfunction equal_parts(std::size_t k, std::vector<double> values);
  // Nested-list form, e.g. {{0,1},{1,0}}.
  static Stepfunction equal_parts(const std::vector<std::vector<double>>& rows);

  SignedStepfunction operator-(const Stepfunction& other) const;
};

class SignedStepfunction : public StepKernel {
 public:
  SignedStepfunction(std::vector<double> measures, std::vector<double> values);
  static SignedStepfunction from(const Stepfunction& w);

  double l1_norm() const;
};

// Intervals of the common refinement of two part layouts, intersected in
// interval order. Pieces shorter than 1e-12 are merged away.
struct Refinement {
  std::vector<double> measures;
  std::vector<std::size_t> left;   // part of the first layout
  std::vector<std::size_t> right;  // part of the second layout
};

Refinement common_refinement(std::span<const double> a, std::span<const double> b);

// Values of `w` pulled back onto the `left` (or `right`) side of a refinement.
std::vector<double> pulled_back(const StepKernel& w, const Refinement& r, bool use_left);

// Same function on the common refinement, up to `tol` per cell.
bool same_function(const StepKernel& a, const StepKernel& b, double tol = 0.0);

// Either consecutive intervals given by right-end boundaries (last must be
// 1), or a grouping of the parts of a kernel into q cells.
class Partition {
 public:
  static Partition intervals(std::vector<double> right_ends);
  static Partition equal(std::size_t q);
  static Partition grouping(std::vector<std::size_t> group_of_part, std::size_t q);

  bool is_grouping() const noexcept { return grouping_; }
  std::size_t cells() const noexcept { return q_; }
  const std::vector<double>& right_ends() const noexcept { return ends_; }
  const std::vector<std::size_t>& groups() const noexcept { return groups_; }

 private:
  Partition() = default;
  bool grouping_ = false;
  std::size_t q_ = 0;
  std::vector<double> ends_;
  std::vector<std::size_t> groups_;
};

// W_G: n parts of measure 1/n, values 1 on edges, 0 elsewhere (diagonal 0).
Stepfunction embed_graph(const SimpleGraph& g);

// Cell-wise measure-weighted average of w over the cells of p.
Stepfunction step_average(const Stepfunction& w, const Partition& p);

// alpha*u + (1-alpha)*w on the common refinement.
Stepfunction mix(const Stepfunction& u, const Stepfunction& w, double alpha);

// True iff u agrees with w on every refined cell where w is exactly 0 or 1.
bool is_flexing(const Stepfunction& u, const Stepfunction& w);

// Twin-class blowup to n_total nodes. Class i holds nodes
// [ceil(i*N/n), ceil((i+1)*N/n)), so class sizes are floor(N/n) or ceil(N/n)
// and every class boundary is within 1/N of the matching boundary of W_G.
SimpleGraph blowup_equitable(const SimpleGraph& g, std::size_t n_total);
std::vector<std::size_t> blowup_class_sizes(std::size_t n, std::size_t n_total);

// V_L + ((1 - V_L) / (1 - U_L)) (W_G - U_L) on the equipartition L into
// |V(G)| intervals, second term taken as 0 where U_L = 1.
Stepfunction dominating_interpolant(const Stepfunction& v, const Stepfunction& u, const SimpleGraph& g);

// Pointwise lower <= upper on the common refinement (tolerance tol).
bool dominated(const StepKernel& lower, const StepKernel& upper, double tol = 0.0);

// Grid discretization of the half graphon 1{x + y <= 1}: cell (i,j) holds
// the exact area fraction of the cell below the anti-diagonal.
Stepfunction half_graphon(std::size_t resolution);

// Graphon JSON: {"parts":[m_1,...],"values":[[...],...]}.
Stepfunction parse_stepfunction_json(const std::string& text);
std::string stepfunction_to_json(const Stepfunction& w);

// Literals: "constant:p", "halfgraphon:resolution", "file:path".
Stepfunction stepfunction_from_literal(const std::string& literal);

}  // namespace graphlim
