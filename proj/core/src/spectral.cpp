#include "nhspec/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "nhspec/linalg.hpp"

namespace nhspec::spectral {

namespace {

bool lex_less(Complex a, Complex b) {
  if (a.real() != b.real()) return a.real() < b.real();
  return a.imag() < b.imag();
}

// Greedy conjugate matching of right eigenvalues to left labels, visiting
// right eigenvalues in (Re, Im) order.
std::vector<std::ptrdiff_t> match_conjugates(const std::vector<Complex>& values,
                                             const std::vector<Complex>& labels, double radius) {
  const std::size_t n = values.size();
  std::vector<std::ptrdiff_t> pairing(n, -1);
  std::vector<bool> used(labels.size(), false);
  for (std::size_t i : sorted_order(values)) {
    const Complex target = std::conj(values[i]);
    std::ptrdiff_t best = -1;
    double best_dist = radius;
    // The label at the same index is the natural partner when both come from
    // one Schur form; prefer it on ties.
    if (i < labels.size() && !used[i] && std::abs(labels[i] - target) <= radius) {
      best = static_cast<std::ptrdiff_t>(i);
      best_dist = std::abs(labels[i] - target);
    }
    for (std::size_t j = 0; j < labels.size() && best_dist > 0.0; ++j) {
      if (used[j]) continue;
      const double d = std::abs(labels[j] - target);
      if (d < best_dist) {
        best_dist = d;
        best = static_cast<std::ptrdiff_t>(j);
      }
    }
    if (best >= 0) {
      pairing[i] = best;
      used[static_cast<std::size_t>(best)] = true;
    }
  }
  return pairing;
}

}  // namespace

std::vector<std::size_t> sorted_order(std::span<const Complex> values) {
  std::vector<std::size_t> idx(values.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::stable_sort(idx.begin(), idx.end(),
                   [&](std::size_t a, std::size_t b) { return lex_less(values[a], values[b]); });
  return idx;
}

std::vector<std::vector<std::size_t>> cluster_values(std::span<const Complex> values, double radius) {
  const std::size_t n = values.size();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  const auto order = sorted_order(values);
  // Sorted by real part, so only a window of neighbours can be within radius.
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      const Complex va = values[order[a]];
      const Complex vb = values[order[b]];
      if (vb.real() - va.real() > radius) break;
      if (std::abs(va - vb) <= radius) parent[find(order[a])] = find(order[b]);
    }
  }
  std::vector<std::vector<std::size_t>> groups;
  std::vector<std::ptrdiff_t> slot(n, -1);
  for (std::size_t i : order) {
    const std::size_t root = find(i);
    if (slot[root] < 0) {
      slot[root] = static_cast<std::ptrdiff_t>(groups.size());
      groups.emplace_back();
    }
    groups[static_cast<std::size_t>(slot[root])].push_back(i);
  }
  return groups;
}

bool BiorthogonalSystem::diagonalizable() const {
  return std::none_of(defective.begin(), defective.end(), [](bool d) { return d; });
}

CMatrix BiorthogonalSystem::overlap_matrix() const { return left.adjoint() * right; }

double BiorthogonalSystem::biorthogonality_residual() const {
  const CMatrix g = overlap_matrix();
  double worst = 0.0;
  for (Eigen::Index i = 0; i < g.cols(); ++i) {
    if (defective[static_cast<std::size_t>(i)]) continue;
    const std::ptrdiff_t p = pairing[static_cast<std::size_t>(i)];
    for (Eigen::Index j = 0; j < g.rows(); ++j) {
      if (defective[static_cast<std::size_t>(j)]) continue;
      const Complex expected = (j == p) ? Complex(1.0) : Complex(0.0);
      worst = std::max(worst, std::abs(g(j, i) - expected));
    }
  }
  return worst;
}

BiorthogonalSystem eigendecompose(const CMatrix& h, const Tolerances& tol) {
  TwoSidedEigensystem two = two_sided_eigensystem(h);
  const std::size_t n = two.values.size();

  BiorthogonalSystem sys;
  sys.eigenvalues = std::move(two.values);
  sys.right = std::move(two.right);
  sys.left = std::move(two.left);
  sys.left_labels.resize(n);
  for (std::size_t k = 0; k < n; ++k) sys.left_labels[k] = std::conj(sys.eigenvalues[k]);
  sys.pairing = match_conjugates(sys.eigenvalues, sys.left_labels, tol.cluster);
  sys.defective.assign(n, false);
  sys.normalized.assign(n, false);
  sys.h_norm = h.norm();

  for (const auto& group : cluster_values(sys.eigenvalues, tol.cluster)) {
    const Eigen::Index m = static_cast<Eigen::Index>(group.size());
    bool paired = true;
    for (std::size_t i : group) paired = paired && sys.pairing[i] >= 0;
    if (!paired) {
      for (std::size_t i : group) sys.defective[i] = true;
      continue;
    }

    CMatrix rc(h.rows(), m), lc(h.rows(), m);
    for (Eigen::Index c = 0; c < m; ++c) {
      rc.col(c) = sys.right.col(static_cast<Eigen::Index>(group[static_cast<std::size_t>(c)]));
      lc.col(c) = sys.left.col(sys.pairing[group[static_cast<std::size_t>(c)]]);
    }
    const CMatrix gram = lc.adjoint() * rc;
    const RVector gsv = linalg::singular_values(gram);
    const Eigen::Index geometric = m == 1 ? 1 : linalg::numerical_rank(rc, tol.defect_rank);
    const double scale = std::max(gsv(0), 1.0);

    if (geometric < m || gsv(m - 1) < tol.overlap_floor * scale) {
      DefectiveCluster cluster;
      Complex mean = 0.0;
      for (std::size_t i : group) {
        sys.defective[i] = true;
        mean += sys.eigenvalues[i];
      }
      cluster.eigenvalue = mean / static_cast<double>(m);
      cluster.algebraic_multiplicity = static_cast<int>(m);
      cluster.geometric_multiplicity = static_cast<int>(std::min(geometric, m));
      cluster.members = group;
      sys.defective_clusters.push_back(std::move(cluster));
      continue;
    }

    // L_c <- L_c G^{-†} makes L_c† R_c = I inside the cluster.
    const CMatrix lnew = lc * gram.adjoint().inverse();
    for (Eigen::Index c = 0; c < m; ++c) {
      const std::size_t i = group[static_cast<std::size_t>(c)];
      sys.left.col(sys.pairing[i]) = lnew.col(c);
      sys.normalized[i] = true;
    }
  }

  // Residuals are measured on unit-norm vectors.
  const CMatrix hr = h * sys.right;
  const CMatrix hl = h.adjoint() * sys.left;
  for (std::size_t k = 0; k < n; ++k) {
    const auto col = static_cast<Eigen::Index>(k);
    const double rn = sys.right.col(col).norm();
    const double ln = sys.left.col(col).norm();
    if (rn > 0.0) {
      sys.right_residual = std::max(
          sys.right_residual, (hr.col(col) - sys.eigenvalues[k] * sys.right.col(col)).norm() / rn);
    }
    if (ln > 0.0) {
      sys.left_residual = std::max(
          sys.left_residual, (hl.col(col) - sys.left_labels[k] * sys.left.col(col)).norm() / ln);
    }
  }
  const double gate = tol.residual * std::max(sys.h_norm, 1e-300);
  sys.residual_ok = sys.right_residual < gate && sys.left_residual < gate;
  return sys;
}

std::size_t SpectrumClassification::count() const {
  std::size_t total = real_singles.size() + 2 * conjugate_pairs.size() + leftovers.size();
  for (const auto& c : defective_clusters) total += static_cast<std::size_t>(c.algebraic_multiplicity);
  return total;
}

SpectrumClassification classify_spectrum(std::span<const Complex> eigenvalues, double tol_real,
                                         double tol_cluster) {
  SpectrumClassification out;
  out.tol_real = tol_real;
  out.tol_cluster = tol_cluster;

  std::vector<Complex> upper, lower;
  for (std::size_t i : sorted_order(eigenvalues)) {
    const Complex e = eigenvalues[i];
    if (std::abs(e.imag()) < tol_real) {
      out.real_singles.push_back(e);
    } else if (e.imag() > 0.0) {
      upper.push_back(e);
    } else {
      lower.push_back(e);
    }
  }

  struct Candidate {
    double dist;
    std::size_t u, l;
  };
  std::vector<Candidate> candidates;
  for (std::size_t u = 0; u < upper.size(); ++u) {
    for (std::size_t l = 0; l < lower.size(); ++l) {
      const double d = std::abs(upper[u] - std::conj(lower[l]));
      if (d < tol_cluster) candidates.push_back({d, u, l});
    }
  }
  std::stable_sort(candidates.begin(), candidates.end(),
                   [](const Candidate& a, const Candidate& b) { return a.dist < b.dist; });
  std::vector<bool> used_u(upper.size(), false), used_l(lower.size(), false);
  std::vector<std::pair<std::size_t, std::size_t>> matches;
  for (const auto& c : candidates) {
    if (used_u[c.u] || used_l[c.l]) continue;
    used_u[c.u] = used_l[c.l] = true;
    matches.emplace_back(c.u, c.l);
  }
  std::sort(matches.begin(), matches.end());
  for (const auto& [u, l] : matches) out.conjugate_pairs.push_back({upper[u], lower[l]});
  for (std::size_t u = 0; u < upper.size(); ++u) {
    if (!used_u[u]) out.leftovers.push_back(upper[u]);
  }
  for (std::size_t l = 0; l < lower.size(); ++l) {
    if (!used_l[l]) out.leftovers.push_back(lower[l]);
  }
  std::stable_sort(out.leftovers.begin(), out.leftovers.end(), lex_less);
  out.unpaired_warning = !out.leftovers.empty();
  return out;
}

SpectrumClassification classify_spectrum(const BiorthogonalSystem& system, double tol_real,
                                         double tol_cluster) {
  std::vector<bool> in_cluster(system.size(), false);
  for (const auto& c : system.defective_clusters) {
    for (std::size_t i : c.members) in_cluster[i] = true;
  }
  std::vector<Complex> rest;
  for (std::size_t i = 0; i < system.size(); ++i) {
    if (!in_cluster[i]) rest.push_back(system.eigenvalues[i]);
  }
  SpectrumClassification out = classify_spectrum(rest, tol_real, tol_cluster);
  out.defective_clusters = system.defective_clusters;
  return out;
}

DefectReport defect_report(const CMatrix& h, Complex eigenvalue, double tol, double tol_cluster) {
  DefectReport report;
  const auto n = h.rows();
  for (const Complex e : eigenvalues(h)) {
    if (std::abs(e - eigenvalue) <= tol_cluster) ++report.algebraic_multiplicity;
  }
  const CMatrix shifted = h - eigenvalue * CMatrix::Identity(n, n);
  const RVector s = linalg::singular_values(shifted);
  const double threshold = tol * std::max(h.norm(), 1e-300);
  const Eigen::Index rank = (s.array() > threshold).count();
  report.geometric_multiplicity = static_cast<int>(n - rank);
  report.min_singular_value = s.size() > 0 ? s(s.size() - 1) : 0.0;
  return report;
}

}  // namespace nhspec::spectral
