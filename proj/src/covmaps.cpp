#include "covmap/covmaps.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "covmap/errors.hpp"

namespace covmap {

LinearMapOnMatrices LinearMapOnMatrices::identity(int d) { return {d, CMatrix::Identity(d * d, d * d)}; }

CMatrix LinearMapOnMatrices::apply(const CMatrix& x) const {
  if (x.rows() != dim || x.cols() != dim) throw ValidationError("matrix size does not match the map");
  return unvec(mat * vec(x), dim);
}

bool CovariantMap::is_real(double tol) const {
  return std::all_of(l.begin(), l.end(), [tol](const cplx& z) { return std::abs(z.imag()) <= tol; });
}

std::vector<double> CovariantMap::real_params() const {
  std::vector<double> out;
  out.reserve(l.size());
  for (const auto& z : l) out.push_back(z.real());
  return out;
}

int multiplicity(const std::string& alpha, const UnitaryRep& u, const CharacterTable& table) {
  const FiniteGroup& g = *u.group;
  const std::size_t a = table.index_of(alpha);
  const auto chi_u = u.character();
  cplx s = 0.0;
  for (std::size_t e = 0; e < g.order(); ++e) s += table.value(a, g.inverse(e)) * std::norm(chi_u[e]);
  s /= static_cast<double>(g.order());
  const double rounded = std::round(s.real());
  if (std::abs(s - cplx(rounded)) > 1e-6)
    throw std::logic_error("multiplicity of " + alpha + " is not an integer: " + std::to_string(s.real()));
  return static_cast<int>(rounded);
}

IsotypicProjector projector(const std::string& alpha, const UnitaryRep& u, const CharacterTable& table) {
  const int m = multiplicity(alpha, u, table);
  if (m == 0) throw ValidationError("irrep " + alpha + " has zero multiplicity in U ⊗ conj(U)");
  const FiniteGroup& g = *u.group;
  const std::size_t a = table.index_of(alpha);
  const int d = u.dim;
  CMatrix p = CMatrix::Zero(d * d, d * d);
  for (std::size_t e = 0; e < g.order(); ++e) {
    const cplx w = table.value(a, g.inverse(e));
    if (w == cplx(0.0)) continue;
    p += w * kron(u(e), u(e).conjugate());
  }
  const int da = table.dims[a];
  p *= static_cast<double>(da) / static_cast<double>(g.order());
  return {alpha, da, m, {d, p}};
}

ProjectorFamily ProjectorFamily::from_characters(const UnitaryRep& u, const CharacterTable& table,
                                                 const std::vector<std::string>& order) {
  ProjectorFamily f;
  f.dim_ = u.dim;
  f.group_name_ = u.group->name();
  f.irrep_label_ = u.label;
  const std::vector<std::string>& labels = order.empty() ? table.labels : order;
  for (const auto& lab : labels) {
    if (multiplicity(lab, u, table) == 0) continue;
    f.projectors_.push_back(projector(lab, u, table));
  }
  if (f.projectors_.empty() || f.projectors_.front().label != "id")
    throw std::logic_error("projector family must start with id");
  f.rep_ = u;
  f.table_ = table;
  return f;
}

ProjectorFamily ProjectorFamily::monomial(int d, int n) {
  if (d < 2) throw ValidationError("MU family requires d >= 2");
  if (n < 3) throw ValidationError("MU(d,n) sectors are irreducible only for n >= 3");
  ProjectorFamily f;
  f.dim_ = d;
  f.group_name_ = "mu:" + std::to_string(d) + "," + std::to_string(n);
  f.irrep_label_ = "defining";
  const int D = d * d;
  CMatrix pid = CMatrix::Zero(D, D);
  CMatrix pdiag = CMatrix::Zero(D, D);
  CMatrix poff = CMatrix::Zero(D, D);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      const int col = i * d + j;
      if (i != j) {
        poff(col, col) = 1.0;
        continue;
      }
      for (int k = 0; k < d; ++k) pid(k * d + k, col) = 1.0 / d;
      pdiag.col(col) = -pid.col(col);
      pdiag(col, col) += 1.0;
    }
  f.projectors_.push_back({"id", 1, 1, {d, pid}});
  f.projectors_.push_back({"alpha", d * (d - 1), 1, {d, poff}});
  f.projectors_.push_back({"beta", d - 1, 1, {d, pdiag}});
  return f;
}

std::vector<std::string> ProjectorFamily::theta() const {
  std::vector<std::string> out;
  for (const auto& p : projectors_) out.push_back(p.label);
  return out;
}

const IsotypicProjector& ProjectorFamily::at(const std::string& label) const {
  for (const auto& p : projectors_)
    if (p.label == label) return p;
  throw ValidationError("no projector for label " + label);
}

CovariantMap ProjectorFamily::make_map(const std::vector<cplx>& l) const {
  if (l.size() != projectors_.size())
    throw ValidationError("expected " + std::to_string(projectors_.size()) + " spectral parameters for " +
                          group_name_ + ", got " + std::to_string(l.size()));
  return {group_name_, irrep_label_, theta(), l};
}

CovariantMap ProjectorFamily::make_map(const std::vector<double>& l) const {
  return make_map(std::vector<cplx>(l.begin(), l.end()));
}

ProjectorFamily family_for(const std::string& group, int d) {
  if (group == "s3") {
    auto g = build_symmetric_group(3);
    return ProjectorFamily::from_characters(standard_irrep_sym(g), character_table(g));
  }
  if (group == "s4") {
    auto g = build_symmetric_group(4);
    return ProjectorFamily::from_characters(standard_irrep_sym(g), character_table(g),
                                            {"id", "lambda1", "lambda2", "lambda3", "sgn"});
  }
  if (group == "q") {
    auto g = build_quaternion_group();
    return ProjectorFamily::from_characters(quaternion_irrep_2d(g), character_table(g));
  }
  if (group == "mu" || group.rfind("mu:", 0) == 0) {
    int n = 3;
    if (group.size() > 3) {
      const auto comma = group.find(',');
      try {
        d = std::stoi(group.substr(3, comma - 3));
        if (comma != std::string::npos) n = std::stoi(group.substr(comma + 1));
      } catch (const std::exception&) {
        throw ValidationError("expected mu:d,n but got " + group);
      }
    }
    if (d < 3) throw ValidationError("MU maps require d >= 3");
    return ProjectorFamily::monomial(d, n);
  }
  throw ValidationError("no map family for group " + group + " (expected s3, s4, q, mu)");
}

LinearMapOnMatrices assemble(const CovariantMap& cm, const ProjectorFamily& family) {
  if (cm.theta.size() != cm.l.size()) throw ValidationError("theta and l differ in length");
  const int d = family.dim();
  CMatrix m = CMatrix::Zero(d * d, d * d);
  for (std::size_t a = 0; a < cm.theta.size(); ++a) m += cm.l[a] * family.at(cm.theta[a]).superop.mat;
  return {d, m};
}

ChoiMatrix choi(const LinearMapOnMatrices& map) {
  const int d = map.dim;
  CMatrix j(d * d, d * d);
  // J[(i,k),(j,l)] = Φ(E_ij)_{kl} = φ_{kl,ij}
  for (int i = 0; i < d; ++i)
    for (int jj = 0; jj < d; ++jj)
      for (int k = 0; k < d; ++k)
        for (int l = 0; l < d; ++l) j(i * d + k, jj * d + l) = map.mat(k * d + l, i * d + jj);
  return {d, j};
}

LinearMapOnMatrices map_from_choi(const ChoiMatrix& j) {
  const int d = j.dim;
  CMatrix m(d * d, d * d);
  for (int i = 0; i < d; ++i)
    for (int jj = 0; jj < d; ++jj)
      for (int k = 0; k < d; ++k)
        for (int l = 0; l < d; ++l) m(k * d + l, i * d + jj) = j.matrix(i * d + k, jj * d + l);
  return {d, m};
}

LinearMapOnMatrices compose_with_transpose(const LinearMapOnMatrices& map) {
  const int d = map.dim;
  CMatrix m(d * d, d * d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) m.col(i * d + j) = map.mat.col(j * d + i);
  return {d, m};
}

LinearMapOnMatrices compose(const LinearMapOnMatrices& outer, const LinearMapOnMatrices& inner) {
  if (outer.dim != inner.dim) throw ValidationError("cannot compose maps of different dimension");
  return {outer.dim, outer.mat * inner.mat};
}

LinearMapOnMatrices transposition_map(int d) { return compose_with_transpose(LinearMapOnMatrices::identity(d)); }

CovarianceCheck check_covariance(const LinearMapOnMatrices& map, const std::vector<CMatrix>& unitaries,
                                 double tol) {
  CovarianceCheck r;
  for (const auto& u : unitaries) {
    const CMatrix ad = kron(u, u.conjugate());
    r.max_violation = std::max(r.max_violation, max_abs(map.mat * ad - ad * map.mat));
  }
  r.covariant = r.max_violation <= tol;
  return r;
}

CovarianceCheck check_covariance(const LinearMapOnMatrices& map, const UnitaryRep& u, double tol) {
  if (u.dim != map.dim) throw ValidationError("representation and map dimension differ");
  return check_covariance(map, u.matrices, tol);
}

std::vector<std::pair<std::string, CMatrix>> decompose_matrix(const CMatrix& x, const ProjectorFamily& family) {
  std::vector<std::pair<std::string, CMatrix>> out;
  for (const auto& p : family.projectors()) out.emplace_back(p.label, p.superop.apply(x));
  return out;
}

}  // namespace covmap
