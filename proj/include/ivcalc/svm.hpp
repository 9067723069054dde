#pragma once

// Hard-margin SVM for interval-valued features:
//   min ½‖w‖²  s.t.  G_i(w,b) = [1,1] ⊖gH y_i ⊙ (wᵀ⊙X_i ⊕ b) ⪯ 0.
// G_i ⪯ 0 bounds both endpoints, which is the worst-corner constraint
// y_i(wᵀx + b) ≥ 1 for every corner x of the box X_i.

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ivcalc/interval.hpp"
#include "ivcalc/ivf.hpp"

namespace ivc {

class SVMDataset {
 public:
  SVMDataset() = default;
  explicit SVMDataset(std::size_t dim) : dim_(dim) {}

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return labels_.size(); }
  /// Throws DimensionError, or DomainError on a label other than ±1.
  void push_back(IntervalVector x, int label);
  const IntervalVector& features(std::size_t i) const { return features_[i]; }
  int label(std::size_t i) const { return labels_[i]; }

  /// Both classes present. Throws PreconditionFailed otherwise.
  void require_trainable() const;

 private:
  std::size_t dim_ = 0;
  std::vector<IntervalVector> features_;
  std::vector<int> labels_;
};

struct SVMConfig {
  double tau_feas = 1e-9;
  double tau_slack = 1e-9;
  /// Cap on m·2ⁿ corner constraints.
  std::size_t max_corners = 800;
  /// Cap on support subsets tried by the enumeration.
  std::size_t max_subsets = 20'000'000;
};

struct SVMKKTReport {
  /// [w_j, w_j] ⊕ Σ(−u_i y_i) ⊙ X_ij per feature.
  std::vector<Interval> containment;
  double containment_residual = 0.0;  // max distance from 0
  double sum_uy = 0.0;                // |Σ u_i y_i|
  std::vector<double> strict_slackness;  // u_i · ‖G_i(w,b)‖
  std::vector<bool> relaxed_ok;          // strict ≤ τ, or u_i > 0 with upper(G_i) = 0
  bool strict_pass = false;
  bool relaxed_pass = false;
  double max_violation = 0.0;  // max upper(G_i), should be ≤ 0
  bool pass = false;           // containment, Σu_i y_i, relaxed slackness, feasibility
};

struct SVMSolution {
  Vec w;
  double b = 0.0;
  Vec u;
  std::vector<std::size_t> support_indices;
  SVMKKTReport kkt_report;
  std::size_t subsets_tried = 0;

  double margin() const { return 2.0 / euclidean_norm(w); }
};

/// Σ_j w_j ⊙ X_j. Throws DimensionError.
Interval dot_interval(std::span<const double> w, const IntervalVector& x);

/// [1,1] ⊖gH y ⊙ (wᵀ⊙X ⊕ b). Throws DimensionError.
Interval constraint_eval(std::span<const double> w, double b, const IntervalVector& x, int y);

/// Throws NotSeparable, ScaleExceeded, PreconditionFailed.
SVMSolution train(const SVMDataset& data, const SVMConfig& cfg = {});

SVMKKTReport kkt_verify(const SVMSolution& sol, const SVMDataset& data, const SVMConfig& cfg = {});

struct BiasSet {
  /// Values of b with upper(G_i) = 0 for every support i.
  std::optional<Interval> relaxed;
  /// Values of b with G_i(w,b) = [0,0] for every support i.
  std::optional<Interval> strict;
};

/// Throws EmptyBiasSet when both readings are empty.
BiasSet bias_set(const SVMSolution& sol, const SVMDataset& data, double tol = 1e-9);

enum class SVMLabel { Positive, Negative, Ambiguous };
std::string_view to_string(SVMLabel l);

struct Classification {
  SVMLabel label = SVMLabel::Ambiguous;
  Interval score;
  int midpoint_sign = 0;
};

/// Throws DimensionError.
Classification classify(const SVMSolution& sol, const IntervalVector& x);

/// Rows of a feature CSV; `labels` is empty when the file has no label column.
struct IntervalTable {
  std::size_t dim = 0;
  std::vector<IntervalVector> rows;
  std::vector<int> labels;
};

/// CSV rows `f1_lo,f1_hi,...,fn_lo,fn_hi[,label]` with an optional header
/// line. Throws ParseError.
IntervalTable read_interval_csv(std::istream& in);
/// As read_interval_csv, but the label column is required.
SVMDataset read_dataset_csv(std::istream& in);
void write_dataset_csv(std::ostream& out, const SVMDataset& data);

}  // namespace ivc
