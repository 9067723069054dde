#include "ivcalc/svm.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include "ivcalc/errors.hpp"
#include "ivcalc/kernels.hpp"
#include "ivcalc/lp.hpp"

namespace ivc {

void SVMDataset::push_back(IntervalVector x, int label) {
  if (x.size() != dim_) throw DimensionError("sample dimension does not match dataset");
  if (label != 1 && label != -1) throw DomainError("labels must be +1 or -1");
  features_.push_back(std::move(x));
  labels_.push_back(label);
}

void SVMDataset::require_trainable() const {
  if (dim_ == 0) throw PreconditionFailed("dataset has no features");
  const bool pos = std::find(labels_.begin(), labels_.end(), 1) != labels_.end();
  const bool neg = std::find(labels_.begin(), labels_.end(), -1) != labels_.end();
  if (!pos || !neg) throw PreconditionFailed("training needs both classes");
}

Interval dot_interval(std::span<const double> w, const IntervalVector& x) {
  if (w.size() != x.size()) throw DimensionError("weight and feature dimensions differ");
  Interval sum;
  for (std::size_t j = 0; j < w.size(); ++j) sum = add(sum, scalar_mul(w[j], x[j]));
  return sum;
}

Interval constraint_eval(std::span<const double> w, double b, const IntervalVector& x, int y) {
  const Interval score = add(dot_interval(w, x), Interval::point(b));
  return gh_difference(Interval::point(1.0), scalar_mul(static_cast<double>(y), score));
}

namespace {

struct Corners {
  simd::LabeledPoints points;
  std::vector<std::size_t> owner;  // sample index per corner
};

// Distinct corners of every box; degenerate coordinates contribute one value.
Corners expand_corners(const SVMDataset& data) {
  const std::size_t n = data.dim();
  Corners c{simd::LabeledPoints(n), {}};
  for (std::size_t i = 0; i < data.size(); ++i) {
    const IntervalVector& x = data.features(i);
    std::vector<std::size_t> wide;
    for (std::size_t j = 0; j < n; ++j) {
      if (x[j].lo() != x[j].hi()) wide.push_back(j);
    }
    for (std::size_t mask = 0; mask < (std::size_t{1} << wide.size()); ++mask) {
      Vec p(n);
      for (std::size_t j = 0; j < n; ++j) p[j] = x[j].lo();
      for (std::size_t k = 0; k < wide.size(); ++k) {
        if (mask >> k & 1) p[wide[k]] = x[wide[k]].hi();
      }
      c.points.push_back(p, static_cast<double>(data.label(i)));
      c.owner.push_back(i);
    }
  }
  return c;
}

bool boxes_intersect(const IntervalVector& a, const IntervalVector& b) {
  for (std::size_t j = 0; j < a.size(); ++j) {
    if (a[j].hi() < b[j].lo() || b[j].hi() < a[j].lo()) return false;
  }
  return true;
}

void require_separable(const SVMDataset& data, const Corners& c) {
  const std::size_t n = data.dim();
  // Free (w, b) split into nonnegative parts.
  lp::Problem prob(2 * n + 2);
  std::fill(prob.objective.begin(), prob.objective.end(), 1.0);
  for (std::size_t k = 0; k < c.points.size(); ++k) {
    const double y = c.points.label(k);
    std::vector<double> row(2 * n + 2);
    for (std::size_t j = 0; j < n; ++j) {
      row[j] = y * c.points.coord(k, j);
      row[n + j] = -row[j];
    }
    row[2 * n] = y;
    row[2 * n + 1] = -y;
    prob.add(std::move(row), lp::Sense::GreaterEqual, 1.0);
  }
  if (lp::solve(prob).status == lp::Status::Optimal) return;
  std::ostringstream msg;
  msg << "no hyperplane separates the boxes";
  for (std::size_t i = 0; i < data.size(); ++i) {
    for (std::size_t j = i + 1; j < data.size(); ++j) {
      if (data.label(i) != data.label(j) && boxes_intersect(data.features(i), data.features(j))) {
        msg << "; samples " << i << " and " << j << " overlap";
        throw NotSeparable(msg.str());
      }
    }
  }
  throw NotSeparable(msg.str());
}

struct Candidate {
  Vec w;
  double b = 0.0;
  Vec alpha;
};

// Equality KKT system on a support subset S:
//   Σ_k α_k y_j y_k ⟨x_j, x_k⟩ + y_j b = 1 (j ∈ S),  Σ_k α_k y_k = 0.
std::optional<Candidate> solve_subset(const Corners& c, std::span<const std::size_t> s) {
  const auto m = static_cast<Eigen::Index>(s.size());
  const std::size_t n = c.points.dim();
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(m + 1, m + 1);
  Eigen::VectorXd rhs = Eigen::VectorXd::Ones(m + 1);
  rhs(m) = 0.0;
  for (Eigen::Index r = 0; r < m; ++r) {
    const double yr = c.points.label(s[r]);
    for (Eigen::Index q = 0; q < m; ++q) {
      double k = 0.0;
      for (std::size_t j = 0; j < n; ++j) k += c.points.coord(s[r], j) * c.points.coord(s[q], j);
      a(r, q) = yr * c.points.label(s[q]) * k;
    }
    a(r, m) = yr;
    a(m, r) = yr;
  }
  const Eigen::FullPivLU<Eigen::MatrixXd> lu(a);
  if (!lu.isInvertible()) return std::nullopt;
  const Eigen::VectorXd sol = lu.solve(rhs);
  if (!sol.allFinite() || (a * sol - rhs).norm() > 1e-9 * (1.0 + rhs.norm())) return std::nullopt;
  Candidate out;
  out.alpha.resize(s.size());
  for (Eigen::Index r = 0; r < m; ++r) {
    if (sol(r) < -1e-12) return std::nullopt;
    out.alpha[r] = std::max(0.0, sol(r));
  }
  out.b = sol(m);
  out.w.assign(n, 0.0);
  for (std::size_t r = 0; r < s.size(); ++r) {
    const double coef = out.alpha[r] * c.points.label(s[r]);
    for (std::size_t j = 0; j < n; ++j) out.w[j] += coef * c.points.coord(s[r], j);
  }
  return out;
}

// Visits subsets of {0..n-1} of size k in lexicographic order until `visit`
// returns true.
template <typename Visit>
bool for_each_subset(std::size_t n, std::size_t k, Visit visit) {
  if (k > n) return false;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  for (;;) {
    if (visit(std::span<const std::size_t>(idx))) return true;
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return false;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace

SVMSolution train(const SVMDataset& data, const SVMConfig& cfg) {
  data.require_trainable();
  if (data.dim() >= 8 * sizeof(std::size_t) ||
      data.size() * (std::size_t{1} << data.dim()) > cfg.max_corners) {
    throw ScaleExceeded("m·2^n corner constraints exceed the configured cap");
  }
  const Corners c = expand_corners(data);
  require_separable(data, c);

  SVMSolution sol;
  std::optional<Candidate> best;
  const std::size_t total = c.points.size();
  for (std::size_t k = 2; k <= total && !best; ++k) {
    for_each_subset(total, k, [&](std::span<const std::size_t> s) {
      bool pos = false, neg = false;
      for (std::size_t i : s) (c.points.label(i) > 0 ? pos : neg) = true;
      if (!pos || !neg) return false;
      if (++sol.subsets_tried > cfg.max_subsets) {
        throw ScaleExceeded("support enumeration exceeded the configured cap");
      }
      std::optional<Candidate> cand = solve_subset(c, s);
      if (!cand) return false;
      const std::vector<double> margins = c.points.margins(cand->w, cand->b);
      for (double mg : margins) {
        if (mg < 1.0 - cfg.tau_feas) return false;
      }
      sol.u.assign(data.size(), 0.0);
      for (std::size_t r = 0; r < s.size(); ++r) sol.u[c.owner[s[r]]] += cand->alpha[r];
      best = std::move(cand);
      return true;
    });
  }
  if (!best) throw NotSeparable("no support subset satisfies the optimality system");
  sol.w = best->w;
  sol.b = best->b;
  for (std::size_t i = 0; i < data.size(); ++i) {
    if (sol.u[i] > 0.0) sol.support_indices.push_back(i);
  }
  sol.kkt_report = kkt_verify(sol, data, cfg);
  return sol;
}

SVMKKTReport kkt_verify(const SVMSolution& sol, const SVMDataset& data, const SVMConfig& cfg) {
  SVMKKTReport r;
  const std::size_t n = data.dim();
  if (sol.w.size() != n || sol.u.size() != data.size()) {
    throw DimensionError("solution does not match dataset");
  }
  for (std::size_t j = 0; j < n; ++j) {
    Interval acc = Interval::point(sol.w[j]);
    for (std::size_t i = 0; i < data.size(); ++i) {
      acc = add(acc, scalar_mul(-sol.u[i] * data.label(i), data.features(i)[j]));
    }
    r.containment.push_back(acc);
    r.containment_residual = std::max({r.containment_residual, acc.lo(), -acc.hi()});
  }
  double s = 0.0;
  for (std::size_t i = 0; i < data.size(); ++i) s += sol.u[i] * data.label(i);
  r.sum_uy = std::abs(s);

  r.strict_pass = true;
  r.relaxed_pass = true;
  r.max_violation = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < data.size(); ++i) {
    const Interval g = constraint_eval(sol.w, sol.b, data.features(i), data.label(i));
    r.max_violation = std::max(r.max_violation, g.hi());
    const double strict = sol.u[i] * norm(g);
    const bool strict_ok = strict <= cfg.tau_slack;
    const bool relaxed = strict_ok || (sol.u[i] > 0.0 && std::abs(g.hi()) <= cfg.tau_slack);
    r.strict_slackness.push_back(strict);
    r.relaxed_ok.push_back(relaxed);
    r.strict_pass = r.strict_pass && strict_ok;
    r.relaxed_pass = r.relaxed_pass && relaxed;
  }
  const double scale = 1.0 + euclidean_norm(sol.w);
  r.pass = r.containment_residual <= cfg.tau_slack * scale && r.sum_uy <= cfg.tau_feas * scale &&
           r.relaxed_pass && r.max_violation <= cfg.tau_feas;
  return r;
}

BiasSet bias_set(const SVMSolution& sol, const SVMDataset& data, double tol) {
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();
  bool strict_possible = true;
  for (std::size_t i : sol.support_indices) {
    const Interval d = dot_interval(sol.w, data.features(i));
    // upper(G_i) = 1 − min y_i(d + b) = 0.
    const double bi = data.label(i) > 0 ? 1.0 - d.lo() : -1.0 - d.hi();
    lo = std::max(lo, bi);
    hi = std::min(hi, bi);
    if (d.width() > tol) strict_possible = false;
  }
  BiasSet out;
  if (lo <= hi + tol) {
    const double mid_lo = std::min(lo, hi);
    const double mid_hi = std::max(lo, hi);
    out.relaxed = Interval(mid_lo, mid_hi);
    if (strict_possible) out.strict = out.relaxed;
  }
  if (!out.relaxed && !out.strict) throw EmptyBiasSet("support vectors bind at different biases");
  return out;
}

std::string_view to_string(SVMLabel l) {
  switch (l) {
    case SVMLabel::Positive:
      return "+1";
    case SVMLabel::Negative:
      return "-1";
    case SVMLabel::Ambiguous:
      return "Ambiguous";
  }
  return "?";
}

Classification classify(const SVMSolution& sol, const IntervalVector& x) {
  Classification c;
  c.score = add(dot_interval(sol.w, x), Interval::point(sol.b));
  if (c.score.lo() > 0.0) {
    c.label = SVMLabel::Positive;
  } else if (c.score.hi() < 0.0) {
    c.label = SVMLabel::Negative;
  }
  const double mid = c.score.mid();
  c.midpoint_sign = (mid > 0.0) - (mid < 0.0);
  return c;
}

// ---------------------------------------------------------------------------
// CSV.

namespace {

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, ',')) {
    const auto a = field.find_first_not_of(" \t\r");
    const auto b = field.find_last_not_of(" \t\r");
    out.push_back(a == std::string::npos ? "" : field.substr(a, b - a + 1));
  }
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

std::optional<double> parse_number(const std::string& s) {
  if (s.empty()) return std::nullopt;
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) return std::nullopt;
    return v;
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

}  // namespace

IntervalTable read_interval_csv(std::istream& in) {
  IntervalTable t;
  std::string line;
  std::size_t line_no = 0;
  std::optional<std::size_t> columns;
  bool labelled = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto fields = split(line);
    if (!columns) {
      columns = fields.size();
      labelled = fields.size() % 2 == 1;
      t.dim = fields.size() / 2;
      if (t.dim == 0) throw ParseError("line " + std::to_string(line_no) + ": no feature columns");
      if (!parse_number(fields[0])) continue;  // header
    }
    if (fields.size() != *columns) {
      throw ParseError("line " + std::to_string(line_no) + ": expected " +
                       std::to_string(*columns) + " columns");
    }
    std::vector<Interval> xs;
    for (std::size_t j = 0; j < t.dim; ++j) {
      const auto lo = parse_number(fields[2 * j]);
      const auto hi = parse_number(fields[2 * j + 1]);
      if (!lo || !hi) throw ParseError("line " + std::to_string(line_no) + ": bad number");
      try {
        xs.emplace_back(*lo, *hi);
      } catch (const InvalidInterval& e) {
        throw ParseError("line " + std::to_string(line_no) + ": " + e.what());
      }
    }
    t.rows.emplace_back(std::move(xs));
    if (labelled) {
      const auto y = parse_number(fields.back());
      if (!y || (*y != 1.0 && *y != -1.0)) {
        throw ParseError("line " + std::to_string(line_no) + ": label must be +1 or -1");
      }
      t.labels.push_back(static_cast<int>(*y));
    }
  }
  if (!columns) throw ParseError("empty dataset");
  return t;
}

SVMDataset read_dataset_csv(std::istream& in) {
  IntervalTable t = read_interval_csv(in);
  if (t.labels.size() != t.rows.size()) throw ParseError("dataset needs a label column");
  SVMDataset d(t.dim);
  for (std::size_t i = 0; i < t.rows.size(); ++i) d.push_back(std::move(t.rows[i]), t.labels[i]);
  return d;
}

void write_dataset_csv(std::ostream& out, const SVMDataset& data) {
  for (std::size_t j = 1; j <= data.dim(); ++j) out << 'f' << j << "_lo,f" << j << "_hi,";
  out << "label\n";
  char buf[32];
  for (std::size_t i = 0; i < data.size(); ++i) {
    for (const Interval& x : data.features(i)) {
      std::snprintf(buf, sizeof buf, "%.17g", x.lo());
      out << buf << ',';
      std::snprintf(buf, sizeof buf, "%.17g", x.hi());
      out << buf << ',';
    }
    out << data.label(i) << '\n';
  }
}

}  // namespace ivc
