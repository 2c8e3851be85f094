#include "adeflat/fusion_data.hpp"
#include "adeflat/version.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <unordered_map>

#include <nlohmann/json.hpp>

namespace ade {

namespace {

constexpr double kPi = std::numbers::pi;

// Exhaustive-enumeration cutoffs for the axiom sweeps; beyond these the
// sweep restricts every label to a deterministic stratified subset
// (truncation-boundary labels plus a fixed-stride interior lattice).
constexpr int kPentagonFullLevel = 12;
constexpr int kHexagonFullLevel = 16;

std::vector<int> stratified_labels(int k) {
  std::vector<int> s;
  auto push = [&](int v) {
    if (v >= 0 && v <= k &&
        std::find(s.begin(), s.end(), v) == s.end())
      s.push_back(v);
  };
  for (int v = 0; v <= 3; ++v) push(v);
  for (int v = k - 3; v <= k; ++v) push(v);
  for (int j = 2; j <= 4; ++j) push(static_cast<int>(std::lround(j * k / 6.0)));
  std::sort(s.begin(), s.end());
  return s;
}

std::vector<int> all_labels(int k) {
  std::vector<int> s(k + 1);
  for (int i = 0; i <= k; ++i) s[i] = i;
  return s;
}

} // namespace

double AxiomReport::max_residual() const {
  return std::max(std::max(pentagon, hexagon), std::max(f_unitarity, verlinde));
}

FusionCategoryData::FusionCategoryData(int level) : k_(level) {
  if (k_ < 1 || k_ > 64)
    throw std::range_error("SU(2) level must be in 1..64, got " +
                           std::to_string(k_));
  const int n_max = 2 * k_ + 4;
  qn_.resize(n_max + 1);
  const double s1 = std::sin(kPi / (k_ + 2));
  for (int n = 0; n <= n_max; ++n)
    qn_[n] = std::sin(n * kPi / (k_ + 2)) / s1;
  qf_.resize(k_ + 2);
  qf_[0] = 1.0;
  for (int n = 1; n <= k_ + 1; ++n) qf_[n] = qf_[n - 1] * qn_[n];

  const int r = rank();
  s_.resize(r, r);
  t_.resize(r, r);
  t_.setZero();
  const double norm = std::sqrt(2.0 / (k_ + 2));
  const double cc = 3.0 * k_ / (k_ + 2);
  for (int a = 0; a < r; ++a) {
    for (int b = 0; b < r; ++b)
      s_(a, b) = norm * std::sin((a + 1.0) * (b + 1.0) * kPi / (k_ + 2));
    const double h = a * (a + 2.0) / (4.0 * (k_ + 2));
    t_(a, a) = std::polar(1.0, 2.0 * kPi * (h - cc / 24.0));
  }
}

FusionCategoryData build_su2_level(int k) { return FusionCategoryData(k); }

double FusionCategoryData::qnum(int n) const {
  if (n < 0 || n >= static_cast<int>(qn_.size()))
    throw std::domain_error("quantum integer index out of table range");
  return qn_[n];
}

double FusionCategoryData::qfact(int n) const {
  if (n < 0 || n > k_ + 1)
    throw std::domain_error("quantum factorial argument out of range 0..k+1");
  return qf_[n];
}

void FusionCategoryData::require_label(int a) const {
  if (!valid_label(a))
    throw std::domain_error("object label " + std::to_string(a) +
                            " outside 0.." + std::to_string(k_));
}

double FusionCategoryData::qdim(int a) const {
  require_label(a);
  return qn_[a + 1];
}

double FusionCategoryData::global_dim() const {
  double d = 0.0;
  for (int a = 0; a <= k_; ++a) d += qn_[a + 1] * qn_[a + 1];
  return d;
}

int FusionCategoryData::n_mult(int a, int b, int c) const {
  require_label(a);
  require_label(b);
  require_label(c);
  if ((a + b + c) % 2 != 0) return 0;
  if (c < std::abs(a - b) || c > a + b || a + b + c > 2 * k_) return 0;
  return 1;
}

std::vector<int> FusionCategoryData::fuse(int a, int b) const {
  require_label(a);
  require_label(b);
  std::vector<int> out;
  const int hi = std::min(a + b, 2 * k_ - a - b);
  for (int c = std::abs(a - b); c <= hi; c += 2) out.push_back(c);
  return out;
}

Eigen::MatrixXi FusionCategoryData::fusion_matrix(int a) const {
  require_label(a);
  Eigen::MatrixXi m = Eigen::MatrixXi::Zero(rank(), rank());
  for (int b = 0; b <= k_; ++b)
    for (int c : fuse(a, b)) m(b, c) = 1;
  return m;
}

double FusionCategoryData::triangle_delta(int x, int y, int z) const {
  return std::sqrt(qf_[(-x + y + z) / 2] * qf_[(x - y + z) / 2] *
                   qf_[(x + y - z) / 2] / qf_[(x + y + z) / 2 + 1]);
}

// Kirillov-Reshetikhin 6j at a root of unity: the z-sum is capped at
// z <= k because [z+1]! vanishes beyond (truncation); the denominator
// factorial arguments stay <= k for admissible labels.
double FusionCategoryData::racah_6j(int a, int b, int e, int c, int d,
                                    int f) const {
  const int t1 = (a + b + e) / 2, t2 = (e + c + d) / 2;
  const int t3 = (b + c + f) / 2, t4 = (a + f + d) / 2;
  const int q1 = (a + b + c + d) / 2, q2 = (a + e + c + f) / 2;
  const int q3 = (b + e + d + f) / 2;
  const int z_lo = std::max(std::max(t1, t2), std::max(t3, t4));
  const int z_hi = std::min(std::min(q1, q2), std::min(q3, k_));
  double sum = 0.0;
  for (int z = z_lo; z <= z_hi; ++z) {
    const double num = (z % 2 ? -1.0 : 1.0) * qf_[z + 1];
    const double den = qf_[z - t1] * qf_[z - t2] * qf_[z - t3] * qf_[z - t4] *
                       qf_[q1 - z] * qf_[q2 - z] * qf_[q3 - z];
    sum += num / den;
  }
  return triangle_delta(a, b, e) * triangle_delta(e, c, d) *
         triangle_delta(b, c, f) * triangle_delta(a, f, d) * sum;
}

double FusionCategoryData::f_symbol(int a, int b, int c, int d, int e,
                                    int f) const {
  if (!admissible(a, b, e) || !admissible(e, c, d) || !admissible(b, c, f) ||
      !admissible(a, f, d))
    throw std::domain_error("inadmissible F-symbol channel");
  const double sign = ((a + b + c + d) / 2) % 2 ? -1.0 : 1.0;
  return sign * std::sqrt(qn_[e + 1] * qn_[f + 1]) * racah_6j(a, b, e, c, d, f);
}

namespace {
std::vector<int> mid_window(int k, int a, int b, int c, int d) {
  // labels m with (a,b,m) and (m,c,d) admissible
  if ((a + b) % 2 != (c + d) % 2) return {};
  int lo = std::max(std::abs(a - b), std::abs(c - d));
  int hi = std::min(std::min(a + b, 2 * k - a - b),
                    std::min(c + d, 2 * k - c - d));
  std::vector<int> out;
  for (int m = lo; m <= hi; m += 2) out.push_back(m);
  return out;
}
} // namespace

std::vector<int> FusionCategoryData::f_rows(int a, int b, int c, int d) const {
  return mid_window(k_, a, b, c, d);
}

std::vector<int> FusionCategoryData::f_cols(int a, int b, int c, int d) const {
  return mid_window(k_, b, c, a, d);
}

Eigen::MatrixXd FusionCategoryData::f_block(int a, int b, int c, int d) const {
  const auto rows = f_rows(a, b, c, d);
  const auto cols = f_cols(a, b, c, d);
  Eigen::MatrixXd m(rows.size(), cols.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j)
      m(i, j) = f_symbol(a, b, c, d, rows[i], cols[j]);
  return m;
}

cplx FusionCategoryData::r_symbol(int a, int b, int c, int sign) const {
  if (!admissible(a, b, c))
    throw std::domain_error("inadmissible R-symbol channel");
  if (sign != 1 && sign != -1)
    throw std::domain_error("braiding sign must be +1 or -1");
  const double par = ((a + b - c) / 2) % 2 ? -1.0 : 1.0;
  const double phase =
      kPi * (c * (c + 2.0) - a * (a + 2.0) - b * (b + 2.0)) / (4.0 * (k_ + 2));
  return par * std::polar(1.0, sign * phase);
}

AxiomReport FusionCategoryData::verify_axioms() const {
  AxiomReport rep;
  const int K = k_ + 1;

  // Memoized F-blocks keyed by the packed (a,b,c,d) quadruple.  Row and
  // column labels are step-2 windows so index lookup is arithmetic.
  std::unordered_map<std::uint64_t, Eigen::MatrixXd> memo;
  auto block = [&](int a, int b, int c, int d) -> const Eigen::MatrixXd& {
    const std::uint64_t key =
        ((static_cast<std::uint64_t>(a) * K + b) * K + c) * K + d;
    auto it = memo.find(key);
    if (it == memo.end()) it = memo.emplace(key, f_block(a, b, c, d)).first;
    return it->second;
  };
  auto fval = [&](int a, int b, int c, int d, int e, int f) -> double {
    const auto& m = block(a, b, c, d);
    const int e_lo = std::max(std::abs(a - b), std::abs(c - d));
    const int f_lo = std::max(std::abs(b - c), std::abs(a - d));
    return m((e - e_lo) / 2, (f - f_lo) / 2);
  };

  rep.pentagon_exhaustive = k_ <= kPentagonFullLevel;
  rep.hexagon_exhaustive = k_ <= kHexagonFullLevel;
  const std::vector<int> pset =
      rep.pentagon_exhaustive ? all_labels(k_) : stratified_labels(k_);
  const std::vector<int> hset =
      rep.hexagon_exhaustive ? all_labels(k_) : stratified_labels(k_);
  auto in_set = [](const std::vector<int>& s, int v) {
    return std::binary_search(s.begin(), s.end(), v);
  };

  // Pentagon: F(f,c,d,e)_{g,l} F(a,b,l,e)_{f,kk}
  //   = sum_h F(a,b,c,g)_{f,h} F(a,h,d,e)_{g,kk} F(b,c,d,kk)_{h,l}.
  // The summation label h always runs over its full admissible window.
  for (int a : pset)
    for (int b : pset)
      for (int f : fuse(a, b)) {
        if (!in_set(pset, f)) continue;
        for (int c : pset)
          for (int g : fuse(f, c)) {
            if (!in_set(pset, g)) continue;
            for (int d : pset)
              for (int e : fuse(g, d)) {
                if (!in_set(pset, e)) continue;
                for (int l : mid_window(k_, c, d, f, e)) {
                  if (!in_set(pset, l)) continue;
                  for (int kk : mid_window(k_, b, l, a, e)) {
                    if (!in_set(pset, kk)) continue;
                    const double lhs =
                        fval(f, c, d, e, g, l) * fval(a, b, l, e, f, kk);
                    double rhs = 0.0;
                    const int h_lo = std::max(
                        {std::abs(b - c), std::abs(a - g), std::abs(d - kk)});
                    const int h_hi = std::min(
                        {b + c, 2 * k_ - b - c, a + g, 2 * k_ - a - g, d + kk,
                         2 * k_ - d - kk});
                    // The three h-windows share parity b+c, so h_lo is
                    // already parity-aligned.
                    for (int h = h_lo; h <= h_hi; h += 2)
                      rhs += fval(a, b, c, g, f, h) * fval(a, h, d, e, g, kk) *
                             fval(b, c, d, kk, h, l);
                    rep.pentagon = std::max(rep.pentagon, std::abs(lhs - rhs));
                    ++rep.pentagon_instances;
                  }
                }
              }
          }
      }

  // Hexagon, both chiralities:
  // R(c,a,e) F(a,c,b,d)_{e,g} R(c,b,g)
  //   = sum_f F(c,a,b,d)_{e,f} R(c,f,d) F(a,b,c,d)_{f,g}.
  for (int sgn : {+1, -1})
    for (int a : hset)
      for (int c : hset)
        for (int e : fuse(a, c)) {
          if (!in_set(hset, e)) continue;
          for (int b : hset)
            for (int d : fuse(e, b)) {
              if (!in_set(hset, d)) continue;
              for (int g : mid_window(k_, c, b, a, d)) {
                if (!in_set(hset, g)) continue;
                const cplx lhs = r_symbol(c, a, e, sgn) *
                                 fval(a, c, b, d, e, g) * r_symbol(c, b, g, sgn);
                cplx rhs = 0.0;
                for (int f : mid_window(k_, a, b, c, d))
                  rhs += fval(c, a, b, d, e, f) * r_symbol(c, f, d, sgn) *
                         fval(a, b, c, d, f, g);
                rep.hexagon = std::max(rep.hexagon, std::abs(lhs - rhs));
                ++rep.hexagon_instances;
              }
            }
        }

  // F-unitarity: every block is real orthogonal (exhaustive at all levels).
  for (int a = 0; a <= k_; ++a)
    for (int b = 0; b <= k_; ++b)
      for (int c = 0; c <= k_; ++c)
        for (int d = 0; d <= k_; ++d) {
          const auto rows = f_rows(a, b, c, d);
          if (rows.empty()) continue;
          const auto cols = f_cols(a, b, c, d);
          if (cols.empty() || rows.size() != cols.size()) continue;
          const Eigen::MatrixXd& m = block(a, b, c, d);
          const double res =
              (m * m.transpose() -
               Eigen::MatrixXd::Identity(rows.size(), rows.size()))
                  .cwiseAbs()
                  .maxCoeff();
          rep.f_unitarity = std::max(rep.f_unitarity, res);
        }

  // Verlinde: S diagonalizes the fusion rules.
  for (int a = 0; a <= k_; ++a)
    for (int b = 0; b <= k_; ++b)
      for (int c = 0; c <= k_; ++c) {
        cplx v = 0.0;
        for (int x = 0; x <= k_; ++x)
          v += s_(a, x) * s_(b, x) * std::conj(s_(c, x)) / s_(0, x);
        rep.verlinde =
            std::max(rep.verlinde, std::abs(v - static_cast<double>(
                                                    n_mult(a, b, c))));
      }

  return rep;
}

std::string FusionCategoryData::to_json(bool full_tensors) const {
  nlohmann::json j;
  j["schema"] = "fusion_category";
  j["schema_version"] = kSchemaVersion;
  j["engine"] = kEngineTag;
  j["level"] = k_;
  auto& objs = j["objects"] = nlohmann::json::array();
  for (int a = 0; a <= k_; ++a)
    objs.push_back({{"label", a}, {"qdim", qdim(a)}});
  auto& fus = j["fusion"] = nlohmann::json::array();
  for (int a = 0; a <= k_; ++a)
    for (int b = a; b <= k_; ++b)
      for (int c : fuse(a, b)) fus.push_back({a, b, c});

  const bool include_tensors = full_tensors || k_ <= 8;
  j["tensors_truncated"] = !include_tensors;
  std::uint64_t n_f = 0, n_r = 0;
  auto& fr = j["f_records"] = nlohmann::json::array();
  auto& rr = j["r_records"] = nlohmann::json::array();
  for (int a = 0; a <= k_; ++a)
    for (int b = 0; b <= k_; ++b) {
      for (int c : fuse(a, b)) {
        ++n_r;
        if (include_tensors) {
          const cplx r = r_symbol(a, b, c, +1);
          rr.push_back({{"a", a}, {"b", b}, {"c", c},
                        {"re", r.real()}, {"im", r.imag()}});
        }
      }
      for (int c = 0; c <= k_; ++c)
        for (int d = 0; d <= k_; ++d)
          for (int e : f_rows(a, b, c, d))
            for (int f : f_cols(a, b, c, d)) {
              ++n_f;
              if (include_tensors)
                fr.push_back({{"a", a}, {"b", b}, {"c", c}, {"d", d},
                              {"e", e}, {"f", f},
                              {"re", f_symbol(a, b, c, d, e, f)},
                              {"im", 0.0}});
            }
    }
  j["f_record_count"] = n_f;
  j["r_record_count"] = n_r;

  auto mat_json = [](const Eigen::MatrixXcd& m) {
    nlohmann::json out = nlohmann::json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      nlohmann::json row = nlohmann::json::array();
      for (Eigen::Index c = 0; c < m.cols(); ++c)
        row.push_back({m(r, c).real(), m(r, c).imag()});
      out.push_back(row);
    }
    return out;
  };
  j["s_matrix"] = mat_json(s_);
  j["t_matrix"] = mat_json(t_);
  return j.dump(2);
}

} // namespace ade
