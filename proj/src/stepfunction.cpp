#include "graphlim/stepfunction.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "graphlim/error.hpp"

namespace graphlim {

namespace {

constexpr double kMeasureTol = 1e-9;
constexpr double kSliver = 1e-12;

}  // namespace

StepKernel::StepKernel(std::vector<double> measures, std::vector<double> values, double lo, double hi)
    : measures_(std::move(measures)), values_(std::move(values)) {
  const std::size_t k = measures_.size();
  require(k >= 1, ErrorCode::invalid_argument, "stepfunction needs at least one part");
  require(values_.size() == k * k, ErrorCode::invalid_argument,
          "stepfunction values must be a " + std::to_string(k) + "x" + std::to_string(k) + " matrix");
  double total = 0;
  for (double m : measures_) {
    require(std::isfinite(m) && m > 0 && m <= 1 + kMeasureTol, ErrorCode::invalid_argument,
            "part measures must lie in (0,1]");
    total += m;
  }
  require(std::abs(total - 1) <= kMeasureTol, ErrorCode::invalid_argument,
          "part measures must sum to 1 (got " + std::to_string(total) + ")");
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      double x = values_[i * k + j];
      require(std::isfinite(x) && x >= lo && x <= hi, ErrorCode::invalid_argument,
              "stepfunction value out of range at (" + std::to_string(i) + "," + std::to_string(j) + ")");
      require(x == values_[j * k + i], ErrorCode::invalid_argument, "stepfunction values must be symmetric");
    }
  }
}

double StepKernel::integral() const {
  const std::size_t k = parts();
  double s = 0;
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) s += measures_[i] * measures_[j] * values_[i * k + j];
  return s;
}

bool StepKernel::has_equal_parts(double tol) const {
  const double target = 1.0 / static_cast<double>(parts());
  return std::all_of(measures_.begin(), measures_.end(), [&](double m) { return std::abs(m - target) <= tol; });
}

std::vector<double> StepKernel::boundaries() const {
  std::vector<double> ends(parts());
  double acc = 0;
  for (std::size_t i = 0; i < parts(); ++i) ends[i] = acc += measures_[i];
  ends.back() = 1.0;
  return ends;
}

Stepfunction::Stepfunction(std::vector<double> measures, std::vector<double> values)
    : StepKernel(std::move(measures), std::move(values), 0.0, 1.0) {}

Stepfunction Stepfunction::constant(double p) { return Stepfunction({1.0}, {p}); }

Stepfunction Stepfunction::equal_parts(std::size_t k, std::vector<double> values) {
  require(k >= 1, ErrorCode::invalid_argument, "stepfunction needs at least one part");
  return Stepfunction(std::vector<double>(k, 1.0 / static_cast<double>(k)), std::move(values));
}

Stepfunction Stepfunction::equal_parts(const std::vector<std::vector<double>>& rows) {
  std::vector<double> flat;
  for (const auto& r : rows) {
    require(r.size() == rows.size(), ErrorCode::invalid_argument, "values must be a square matrix");
    flat.insert(flat.end(), r.begin(), r.end());
  }
  return equal_parts(rows.size(), std::move(flat));
}

SignedStepfunction Stepfunction::operator-(const Stepfunction& other) const {
  Refinement r = common_refinement(measures(), other.measures());
  auto a = pulled_back(*this, r, true);
  auto b = pulled_back(other, r, false);
  for (std::size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
  return SignedStepfunction(std::move(r.measures), std::move(a));
}

SignedStepfunction::SignedStepfunction(std::vector<double> measures, std::vector<double> values)
    : StepKernel(std::move(measures), std::move(values), -1.0, 1.0) {}

SignedStepfunction SignedStepfunction::from(const Stepfunction& w) {
  return SignedStepfunction({w.measures().begin(), w.measures().end()}, {w.values().begin(), w.values().end()});
}

double SignedStepfunction::l1_norm() const {
  const std::size_t k = parts();
  double s = 0;
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) s += measures_[i] * measures_[j] * std::abs(values_[i * k + j]);
  return s;
}

Refinement common_refinement(std::span<const double> a, std::span<const double> b) {
  auto ends = [](std::span<const double> m) {
    std::vector<double> e(m.size());
    double acc = 0;
    for (std::size_t i = 0; i < m.size(); ++i) e[i] = acc += m[i];
    e.back() = 1.0;
    return e;
  };
  const auto ea = ends(a);
  const auto eb = ends(b);
  Refinement r;
  std::size_t i = 0, j = 0;
  double start = 0;
  while (i < ea.size() && j < eb.size()) {
    const double end = std::min(ea[i], eb[j]);
    if (end - start > kSliver) {
      r.measures.push_back(end - start);
      r.left.push_back(i);
      r.right.push_back(j);
      start = end;
    }
    // Boundaries closer than the sliver tolerance are treated as one.
    if (ea[i] <= end + kSliver) ++i;
    if (eb[j] <= end + kSliver) ++j;
  }
  // Absorb any rounding remainder into the last piece.
  double total = 0;
  for (double m : r.measures) total += m;
  r.measures.back() += 1.0 - total;
  return r;
}

std::vector<double> pulled_back(const StepKernel& w, const Refinement& r, bool use_left) {
  const auto& idx = use_left ? r.left : r.right;
  const std::size_t q = idx.size();
  std::vector<double> out(q * q);
  for (std::size_t i = 0; i < q; ++i)
    for (std::size_t j = 0; j < q; ++j) out[i * q + j] = w.value(idx[i], idx[j]);
  return out;
}

bool same_function(const StepKernel& a, const StepKernel& b, double tol) {
  Refinement r = common_refinement(a.measures(), b.measures());
  auto va = pulled_back(a, r, true);
  auto vb = pulled_back(b, r, false);
  for (std::size_t i = 0; i < va.size(); ++i)
    if (std::abs(va[i] - vb[i]) > tol) return false;
  return true;
}

bool dominated(const StepKernel& lower, const StepKernel& upper, double tol) {
  Refinement r = common_refinement(lower.measures(), upper.measures());
  auto lo = pulled_back(lower, r, true);
  auto hi = pulled_back(upper, r, false);
  for (std::size_t i = 0; i < lo.size(); ++i)
    if (lo[i] > hi[i] + tol) return false;
  return true;
}

Partition Partition::intervals(std::vector<double> right_ends) {
  require(!right_ends.empty(), ErrorCode::not_aligned, "partition not aligned: no cells");
  double prev = 0;
  for (double e : right_ends) {
    require(std::isfinite(e) && e > prev + kSliver, ErrorCode::not_aligned,
            "partition not aligned: boundaries must increase strictly");
    prev = e;
  }
  require(std::abs(right_ends.back() - 1.0) <= kMeasureTol, ErrorCode::not_aligned,
          "partition not aligned: last boundary must be 1");
  right_ends.back() = 1.0;
  Partition p;
  p.q_ = right_ends.size();
  p.ends_ = std::move(right_ends);
  return p;
}

Partition Partition::equal(std::size_t q) {
  require(q >= 1, ErrorCode::not_aligned, "partition not aligned: no cells");
  std::vector<double> ends(q);
  for (std::size_t i = 0; i < q; ++i) ends[i] = static_cast<double>(i + 1) / static_cast<double>(q);
  return intervals(std::move(ends));
}

Partition Partition::grouping(std::vector<std::size_t> group_of_part, std::size_t q) {
  require(q >= 1, ErrorCode::not_aligned, "partition not aligned: no cells");
  std::vector<bool> used(q, false);
  for (std::size_t g : group_of_part) {
    require(g < q, ErrorCode::not_aligned, "partition not aligned: group index out of range");
    used[g] = true;
  }
  require(std::all_of(used.begin(), used.end(), [](bool b) { return b; }), ErrorCode::not_aligned,
          "partition not aligned: empty group");
  Partition p;
  p.grouping_ = true;
  p.q_ = q;
  p.groups_ = std::move(group_of_part);
  return p;
}

Stepfunction embed_graph(const SimpleGraph& g) {
  const std::size_t n = g.node_count();
  std::vector<double> values(n * n, 0.0);
  for (const Edge& e : g.edges()) values[e.u * n + e.v] = values[e.v * n + e.u] = 1.0;
  return Stepfunction::equal_parts(n, std::move(values));
}

Stepfunction step_average(const Stepfunction& w, const Partition& p) {
  const std::size_t k = w.parts();
  const std::size_t q = p.cells();
  // overlap[c * k + a] = |cell c intersect part a|
  std::vector<double> overlap(q * k, 0.0);
  if (p.is_grouping()) {
    require(p.groups().size() == k, ErrorCode::not_aligned,
            "partition not aligned: grouping covers " + std::to_string(p.groups().size()) + " parts, stepfunction has " +
                std::to_string(k));
    for (std::size_t a = 0; a < k; ++a) overlap[p.groups()[a] * k + a] = w.measure(a);
  } else {
    const auto parts_end = w.boundaries();
    const auto& cells_end = p.right_ends();
    std::size_t a = 0;
    double start = 0;
    for (std::size_t c = 0; c < q; ++c) {
      while (start < cells_end[c] - kSliver && a < k) {
        const double end = std::min(cells_end[c], parts_end[a]);
        overlap[c * k + a] += std::max(0.0, end - start);
        start = end;
        if (parts_end[a] <= cells_end[c] + kSliver) ++a;
      }
      start = cells_end[c];
    }
  }
  std::vector<double> cell_measure(q, 0.0);
  for (std::size_t c = 0; c < q; ++c)
    for (std::size_t a = 0; a < k; ++a) cell_measure[c] += overlap[c * k + a];
  for (std::size_t c = 0; c < q; ++c)
    require(cell_measure[c] > 0, ErrorCode::not_aligned, "partition not aligned: empty cell");

  std::vector<double> values(q * q, 0.0);
  for (std::size_t c = 0; c < q; ++c) {
    for (std::size_t d = c; d < q; ++d) {
      double s = 0;
      for (std::size_t a = 0; a < k; ++a) {
        const double oa = overlap[c * k + a];
        if (oa == 0) continue;
        for (std::size_t b = 0; b < k; ++b) s += oa * overlap[d * k + b] * w.value(a, b);
      }
      const double v = std::clamp(s / (cell_measure[c] * cell_measure[d]), 0.0, 1.0);
      values[c * q + d] = values[d * q + c] = v;
    }
  }
  return Stepfunction(std::move(cell_measure), std::move(values));
}

Stepfunction mix(const Stepfunction& u, const Stepfunction& w, double alpha) {
  require(alpha >= 0 && alpha <= 1, ErrorCode::invalid_argument, "mix weight must lie in [0,1]");
  Refinement r = common_refinement(u.measures(), w.measures());
  auto a = pulled_back(u, r, true);
  auto b = pulled_back(w, r, false);
  // Written as b + alpha (a - b) so cells where a == b keep their value
  // bit for bit (flexing pins exact 0/1 cells).
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (alpha == 1) continue;
    a[i] = alpha == 0 ? b[i] : std::clamp(b[i] + alpha * (a[i] - b[i]), 0.0, 1.0);
  }
  return Stepfunction(std::move(r.measures), std::move(a));
}

bool is_flexing(const Stepfunction& u, const Stepfunction& w) {
  Refinement r = common_refinement(u.measures(), w.measures());
  auto a = pulled_back(u, r, true);
  auto b = pulled_back(w, r, false);
  for (std::size_t i = 0; i < a.size(); ++i)
    if ((b[i] == 0.0 || b[i] == 1.0) && a[i] != b[i]) return false;
  return true;
}

std::vector<std::size_t> blowup_class_sizes(std::size_t n, std::size_t n_total) {
  require(n >= 1 && n_total >= n, ErrorCode::invalid_argument,
          "blowup target " + std::to_string(n_total) + " is smaller than the graph (" + std::to_string(n) + " nodes)");
  std::vector<std::size_t> sizes(n);
  auto boundary = [&](std::size_t i) { return (i * n_total + n - 1) / n; };
  for (std::size_t i = 0; i < n; ++i) sizes[i] = boundary(i + 1) - boundary(i);
  return sizes;
}

SimpleGraph blowup_equitable(const SimpleGraph& g, std::size_t n_total) {
  const std::size_t n = g.node_count();
  auto sizes = blowup_class_sizes(n, n_total);
  std::vector<std::size_t> cls;
  cls.reserve(n_total);
  for (std::size_t i = 0; i < n; ++i) cls.insert(cls.end(), sizes[i], i);
  SimpleGraph out(n_total);
  for (std::size_t a = 0; a < n_total; ++a)
    for (std::size_t b = a + 1; b < n_total; ++b)
      if (g.has_edge(cls[a], cls[b])) out.add_edge(a, b);
  return out;
}

Stepfunction dominating_interpolant(const Stepfunction& v, const Stepfunction& u, const SimpleGraph& g) {
  require(dominated(u, v), ErrorCode::domination, "domination violated: U exceeds V on some cell");
  const std::size_t n = g.node_count();
  const Partition lambda = Partition::equal(n);
  const Stepfunction v_l = step_average(v, lambda);
  const Stepfunction u_l = step_average(u, lambda);
  // Averages of U <= V stay ordered up to rounding; clamp so the formula
  // never sees U_L > V_L.
  std::vector<double> values(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      const double vv = v_l.value(i, j);
      const double uu = std::min(u_l.value(i, j), vv);
      const double wg = g.has_edge(i, j) ? 1.0 : 0.0;
      double out = vv;
      if (uu < 1.0) out = vv + (1.0 - vv) / (1.0 - uu) * (wg - uu);
      out = std::clamp(out, wg, 1.0);
      values[i * n + j] = values[j * n + i] = out;
    }
  }
  return Stepfunction(std::vector<double>(v_l.measures().begin(), v_l.measures().end()), std::move(values));
}

Stepfunction half_graphon(std::size_t resolution) {
  require(resolution >= 1, ErrorCode::invalid_argument, "half graphon resolution must be positive");
  const std::size_t r = resolution;
  std::vector<double> values(r * r);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) values[i * r + j] = i + j + 2 <= r ? 1.0 : (i + j + 1 == r ? 0.5 : 0.0);
  return Stepfunction::equal_parts(r, std::move(values));
}

Stepfunction parse_stepfunction_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    fail(ErrorCode::parse, std::string("graphon JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("parts") || !j.contains("values"))
    fail(ErrorCode::parse, "graphon JSON: expected object with \"parts\" and \"values\"");
  for (const auto& [key, _] : j.items())
    if (key != "parts" && key != "values") fail(ErrorCode::parse, "graphon JSON: unknown key \"" + key + "\"");
  try {
    auto parts = j.at("parts").get<std::vector<double>>();
    auto rows = j.at("values").get<std::vector<std::vector<double>>>();
    if (rows.size() != parts.size()) fail(ErrorCode::parse, "graphon JSON: values must have one row per part");
    std::vector<double> flat;
    for (const auto& r : rows) {
      if (r.size() != parts.size()) fail(ErrorCode::parse, "graphon JSON: values must be square");
      flat.insert(flat.end(), r.begin(), r.end());
    }
    return Stepfunction(std::move(parts), std::move(flat));
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::parse, std::string("graphon JSON: ") + e.what());
  } catch (const Error& e) {
    if (e.code() == ErrorCode::parse) throw;
    fail(ErrorCode::parse, std::string("graphon JSON: ") + e.what());
  }
}

std::string stepfunction_to_json(const Stepfunction& w) {
  nlohmann::ordered_json j;
  j["parts"] = std::vector<double>(w.measures().begin(), w.measures().end());
  std::vector<std::vector<double>> rows(w.parts());
  for (std::size_t i = 0; i < w.parts(); ++i)
    for (std::size_t k = 0; k < w.parts(); ++k) rows[i].push_back(w.value(i, k));
  j["values"] = rows;
  return j.dump();
}

Stepfunction stepfunction_from_literal(const std::string& literal) {
  auto colon = literal.find(':');
  if (colon == std::string::npos)
    fail(ErrorCode::parse, "graphon literal must be constant:p, halfgraphon:resolution or file:path");
  const std::string kind = literal.substr(0, colon);
  const std::string arg = literal.substr(colon + 1);
  if (kind == "constant") {
    std::size_t used = 0;
    double p = 0;
    try {
      p = std::stod(arg, &used);
    } catch (const std::exception&) {
      fail(ErrorCode::parse, "constant graphon: cannot parse '" + arg + "'");
    }
    if (used != arg.size()) fail(ErrorCode::parse, "constant graphon: trailing characters in '" + arg + "'");
    if (!(p >= 0 && p <= 1)) fail(ErrorCode::parse, "constant graphon: value must lie in [0,1]");
    return Stepfunction::constant(p);
  }
  if (kind == "halfgraphon") {
    std::size_t used = 0;
    unsigned long r = 0;
    try {
      r = std::stoul(arg, &used);
    } catch (const std::exception&) {
      fail(ErrorCode::parse, "halfgraphon: cannot parse resolution '" + arg + "'");
    }
    if (used != arg.size() || r == 0) fail(ErrorCode::parse, "halfgraphon: resolution must be a positive integer");
    return half_graphon(r);
  }
  if (kind == "file") {
    std::ifstream in(arg, std::ios::binary);
    if (!in) fail(ErrorCode::io, "cannot open graphon file: " + arg);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_stepfunction_json(buf.str());
  }
  fail(ErrorCode::parse, "unknown graphon literal kind '" + kind + "'");
}

}  // namespace graphlim
