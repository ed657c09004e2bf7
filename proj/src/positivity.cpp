#include "covmap/positivity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "covmap/errors.hpp"

namespace covmap {

namespace {

void require_hermitian(const CMatrix& m, double tol, const char* what) {
  const double scale = std::max(1.0, max_abs(m));
  if (hermiticity_defect(m) > tol * scale) throw ValidationError(std::string(what) + " is not hermitian");
}

// ⟨x⊗y|J|x⊗y⟩ as a quadratic form in x (fixed y) or in y (fixed x).
CMatrix effective_x(const CMatrix& j, const CVector& y, int d) {
  CMatrix a = CMatrix::Zero(d, d);
  for (int i = 0; i < d; ++i)
    for (int jj = 0; jj < d; ++jj) {
      cplx s = 0.0;
      for (int k = 0; k < d; ++k)
        for (int l = 0; l < d; ++l) s += std::conj(y(k)) * j(i * d + k, jj * d + l) * y(l);
      a(i, jj) = s;
    }
  return a;
}

CMatrix effective_y(const CMatrix& j, const CVector& x, int d) {
  CMatrix a = CMatrix::Zero(d, d);
  for (int k = 0; k < d; ++k)
    for (int l = 0; l < d; ++l) {
      cplx s = 0.0;
      for (int i = 0; i < d; ++i)
        for (int jj = 0; jj < d; ++jj) s += std::conj(x(i)) * j(i * d + k, jj * d + l) * x(jj);
      a(k, l) = s;
    }
  return a;
}

CVector random_unit(int d, std::mt19937_64& rng) {
  std::normal_distribution<double> n01(0.0, 1.0);
  CVector v(d);
  for (int i = 0; i < d; ++i) v(i) = cplx(n01(rng), n01(rng));
  return v / v.norm();
}

}  // namespace

PsdResult is_cp(const ChoiMatrix& j, double tol, double tol_herm) {
  require_hermitian(j.matrix, tol_herm, "Choi matrix");
  const RVector ev = hermitian_eigenvalues(j.matrix);
  const double norm = std::max(std::abs(ev(0)), std::abs(ev(ev.size() - 1)));
  return {ev(0) >= -tol * std::max(1.0, norm), ev(0)};
}

PsdResult is_cop(const LinearMapOnMatrices& map, double tol, double tol_herm) {
  return is_cp(choi(compose_with_transpose(map)), tol, tol_herm);
}

std::vector<InequalityValue> cp_inequalities(const ProjectorFamily& family, const std::vector<double>& l) {
  if (!family.rep() || !family.table())
    throw ValidationError("cp_inequalities needs a character-table family (s3, s4, q)");
  const UnitaryRep& u = *family.rep();
  const CharacterTable& t = *family.table();
  const FiniteGroup& g = *u.group;
  const auto theta = family.theta();
  if (l.size() != theta.size()) throw ValidationError("parameter count does not match Θ");
  for (const auto& p : family.projectors())
    if (p.multiplicity != 1)
      throw ValidationError("multiplicity " + std::to_string(p.multiplicity) + " for " + p.label +
                            ": only necessary conditions are available");

  std::vector<double> f(g.order(), 0.0);
  for (std::size_t e = 0; e < g.order(); ++e) {
    cplx s = 0.0;
    for (std::size_t a = 0; a < theta.size(); ++a) {
      const std::size_t row = t.index_of(theta[a]);
      s += l[a] * static_cast<double>(t.dims[row]) * t.value(row, g.inverse(e));
    }
    f[e] = s.real();
  }

  std::vector<InequalityValue> out;
  for (const auto& p : family.projectors()) {
    const HermitianEigen eig = hermitian_eigen(p.superop.mat);
    int idx = 0;
    for (Eigen::Index c = 0; c < eig.values.size(); ++c) {
      if (eig.values(c) < 0.5) continue;
      CMatrix v = unvec(eig.vectors.col(c), u.dim);
      v /= v.norm();
      double s = 0.0;
      for (std::size_t e = 0; e < g.order(); ++e) s += f[e] * std::norm((v * u(e).adjoint()).trace());
      out.push_back({p.label, idx++, s});
    }
  }
  return out;
}

bool cuboid_necessary(const std::vector<double>& l) {
  if (l.empty()) return false;
  return std::all_of(l.begin() + 1, l.end(), [&](double x) { return std::abs(x) <= l[0]; });
}

DiagonalCheck diagonal_necessary(const LinearMapOnMatrices& map, double tol) {
  const int d = map.dim;
  double m = std::numeric_limits<double>::infinity();
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) m = std::min(m, map.mat(i * d + i, j * d + j).real());
  return {m >= -tol, m};
}

double block_value(const ChoiMatrix& j, const ProductVectorPair& pair) {
  const CVector v = kron(pair.x, pair.y);
  return (v.adjoint() * j.matrix * v)(0, 0).real();
}

BlockSearchResult block_positivity_search(const ChoiMatrix& j, const BlockSearchOptions& opts) {
  const int d = j.dim;
  BlockSearchResult best;
  best.min_value = std::numeric_limits<double>::infinity();
  best.restarts = opts.restarts;
  best.iters = opts.iters;
  best.seed = opts.seed;
  std::mt19937_64 rng(opts.seed);
  const CMatrix h = 0.5 * (j.matrix + j.matrix.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> es;
  for (int r = 0; r < std::max(1, opts.restarts); ++r) {
    CVector y = random_unit(d, rng);
    CVector x = random_unit(d, rng);
    double prev = std::numeric_limits<double>::infinity();
    double val = prev;
    for (int it = 0; it < std::max(1, opts.iters); ++it) {
      es.compute(effective_x(h, y, d));
      x = es.eigenvectors().col(0);
      es.compute(effective_y(h, x, d));
      y = es.eigenvectors().col(0);
      val = es.eigenvalues()(0);
      if (std::abs(prev - val) < 1e-12) break;
      prev = val;
    }
    if (val < best.min_value) {
      best.min_value = val;
      best.best = {x, y};
    }
  }
  return best;
}

CMatrix inverse_reduction(const CMatrix& x) {
  const Eigen::Index d = x.rows();
  if (d < 2 || x.cols() != d) throw ValidationError("inverse reduction needs a square matrix with d >= 2");
  return (x.trace() / static_cast<double>(d - 1)) * CMatrix::Identity(d, d) - x;
}

ChoiMatrix reduction_witness(double l_id, const ChoiMatrix& j) {
  const int d = j.dim;
  if (d < 2) throw ValidationError("reduction witness needs d >= 2");
  return {d, (l_id / (d * (d - 1.0))) * CMatrix::Identity(d * d, d * d) - j.matrix / static_cast<double>(d)};
}

ChoiMatrix reduction_witness(const CovariantMap& cm, const ProjectorFamily& family) {
  if (cm.l.empty() || std::abs(cm.l[0].imag()) > 0) throw ValidationError("l_id must be real");
  return reduction_witness(cm.l[0].real(), choi(assemble(cm, family)));
}

ReductionResult reduction_sufficient(double l_id, const ChoiMatrix& j, double tol) {
  const int d = j.dim;
  if (d < 2) throw ValidationError("reduction test needs d >= 2");
  const RVector ev = hermitian_eigenvalues(j.matrix);
  ReductionResult r;
  for (Eigen::Index i = 0; i < ev.size(); ++i) r.values.push_back(l_id / (d - 1.0) - ev(i));
  const double scale = std::max(1.0, std::max(std::abs(ev(0)), std::abs(ev(ev.size() - 1))));
  r.sufficient = *std::min_element(r.values.begin(), r.values.end()) >= -tol * scale;
  return r;
}

double witness_value(const ChoiMatrix& j, const CMatrix& state, double tol) {
  if (state.rows() != j.matrix.rows() || state.cols() != j.matrix.cols())
    throw ValidationError("state dimension does not match the Choi matrix");
  if (hermiticity_defect(state) > tol) throw ValidationError("state is not hermitian");
  if (std::abs(state.trace() - cplx(1.0)) > tol) throw ValidationError("state does not have unit trace");
  if (hermitian_eigenvalues(state)(0) < -tol) throw ValidationError("state is not positive semidefinite");
  return (state * j.matrix).trace().real();
}

ClassificationReport classify(const ProjectorFamily& family, const CovariantMap& cm, const ClassifyOptions& opts,
                              const ExactPredicate* exact) {
  if (!cm.is_real(opts.tol_eq)) throw ValidationError("classification requires real spectral parameters");
  ClassificationReport rep;
  rep.map = cm;
  const std::vector<double> l = cm.real_params();
  const LinearMapOnMatrices m = assemble(cm, family);
  const ChoiMatrix j = choi(m);

  rep.cp = is_cp(j, opts.tol_psd, opts.tol_eq);
  rep.cop = is_cop(m, opts.tol_psd, opts.tol_eq);
  rep.cuboid_necessary = cuboid_necessary(l);
  rep.diagonal = diagonal_necessary(m, opts.tol_eq);
  if (exact && *exact) rep.exact_positive = (*exact)(l);

  const bool zero_map = std::all_of(l.begin(), l.end(), [](double x) { return x == 0.0; });
  rep.degenerate = l.front() <= 0.0 && !zero_map;
  if (rep.degenerate) {
    rep.verdict = "not-P";
    return rep;
  }

  rep.reduction = reduction_sufficient(l.front(), j, opts.tol_psd);
  rep.witness_flag = rep.reduction.sufficient && !rep.cp.holds;
  if (opts.run_search) rep.sampled = block_positivity_search(j, opts.search);

  if (rep.cp.holds)
    rep.verdict = "CP";
  else if (rep.exact_positive.value_or(false))
    rep.verdict = "P-certified";
  else if (rep.reduction.sufficient)
    rep.verdict = "P-sufficient";
  else if (rep.exact_positive.has_value() || !rep.cuboid_necessary || !rep.diagonal.holds ||
           (rep.sampled && rep.sampled->min_value < -opts.tol_search))
    rep.verdict = "not-P";
  else
    rep.verdict = "undetermined";
  return rep;
}

}  // namespace covmap
