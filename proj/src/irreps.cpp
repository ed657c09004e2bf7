#include "covmap/irreps.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

#include "covmap/errors.hpp"

namespace covmap {

namespace {

void chop(CMatrix& m) {
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      double re = m(i, j).real(), im = m(i, j).imag();
      if (std::abs(re) < 1e-15) re = 0.0;
      if (std::abs(im) < 1e-15) im = 0.0;
      m(i, j) = {re, im};
    }
}

int parity(const std::vector<int>& perm) {
  std::vector<char> seen(perm.size(), 0);
  int transpositions = 0;
  for (std::size_t s = 0; s < perm.size(); ++s) {
    if (seen[s]) continue;
    std::size_t len = 0;
    for (std::size_t c = s; !seen[c]; c = static_cast<std::size_t>(perm[c])) {
      seen[c] = 1;
      ++len;
    }
    transpositions += static_cast<int>(len) - 1;
  }
  return transpositions % 2 == 0 ? 1 : -1;
}

std::vector<int> cycle_type(const std::vector<int>& perm) {
  std::vector<char> seen(perm.size(), 0);
  std::vector<int> type;
  for (std::size_t s = 0; s < perm.size(); ++s) {
    if (seen[s]) continue;
    int len = 0;
    for (std::size_t c = s; !seen[c]; c = static_cast<std::size_t>(perm[c])) {
      seen[c] = 1;
      ++len;
    }
    type.push_back(len);
  }
  std::sort(type.rbegin(), type.rend());
  return type;
}

UnitaryRep make_rep(const GroupPtr& g, std::string label, int dim,
                    const std::function<CMatrix(std::size_t)>& f) {
  UnitaryRep rep{g, std::move(label), dim, {}};
  rep.matrices.reserve(g->order());
  for (std::size_t e = 0; e < g->order(); ++e) {
    CMatrix m = (e == g->identity()) ? CMatrix::Identity(dim, dim) : f(e);
    chop(m);
    rep.matrices.push_back(std::move(m));
  }
  return rep;
}

UnitaryRep scalar_rep(const GroupPtr& g, std::string label, const std::function<double(std::size_t)>& f) {
  return make_rep(g, std::move(label), 1, [&](std::size_t e) {
    CMatrix m(1, 1);
    m(0, 0) = f(e);
    return m;
  });
}

void ensure_valid(const UnitaryRep& rep) {
  const RepReport r = verify_rep(rep, rep.group->order() <= 120);
  if (!r.passed(1e-10))
    throw std::logic_error("representation " + rep.label + " of " + rep.group->name() + " failed validation");
}

void require_table_group(const GroupPtr& g) {
  const bool ok = (g->family() == GroupFamily::symmetric && (g->degree() == 3 || g->degree() == 4)) ||
                  g->family() == GroupFamily::quaternion;
  if (!ok) throw ValidationError("character table available only for s3, s4 and q, not " + g->name());
}

}  // namespace

std::vector<cplx> UnitaryRep::character() const {
  std::vector<cplx> chi;
  chi.reserve(matrices.size());
  for (const auto& m : matrices) chi.push_back(m.trace());
  return chi;
}

std::size_t CharacterTable::index_of(std::string_view label) const {
  for (std::size_t a = 0; a < labels.size(); ++a)
    if (labels[a] == label) return a;
  throw ValidationError("irrep " + std::string(label) + " not in the character table of " + group->name());
}

bool CharacterTable::contains(std::string_view label) const {
  return std::find(labels.begin(), labels.end(), label) != labels.end();
}

std::vector<cplx> CharacterTable::per_element(std::size_t irrep) const {
  std::vector<cplx> out(group->order());
  for (std::size_t g = 0; g < group->order(); ++g) out[g] = value(irrep, g);
  return out;
}

CMatrix dft_matrix(int n) {
  if (n < 1) throw ValidationError("dft_matrix requires n >= 1");
  CMatrix u(n, n);
  const double s = 1.0 / std::sqrt(static_cast<double>(n));
  for (int k = 0; k < n; ++k)
    for (int l = 0; l < n; ++l) u(k, l) = root_of_unity(n, static_cast<long long>(k) * l) * s;
  return u;
}

CMatrix permutation_matrix(const std::vector<int>& perm) {
  const int n = static_cast<int>(perm.size());
  CMatrix m = CMatrix::Zero(n, n);
  for (int j = 0; j < n; ++j) m(perm[j], j) = 1.0;
  return m;
}

CMatrix standard_irrep_matrix(const std::vector<int>& perm) {
  const int n = static_cast<int>(perm.size());
  CMatrix psi(n - 1, n - 1);
  for (int i = 1; i < n; ++i)
    for (int j = 1; j < n; ++j) {
      cplx acc = 0.0;
      for (int l = 0; l < n; ++l)
        acc += root_of_unity(n, static_cast<long long>(j) * l - static_cast<long long>(perm[l]) * i);
      psi(i - 1, j - 1) = acc / static_cast<double>(n);
    }
  chop(psi);
  return psi;
}

CMatrix transposition_matrix(int n, int a, int b) {
  if (!(0 <= a && a < b && b < n)) throw ValidationError("transposition_matrix requires 0 <= a < b < n");
  CMatrix psi(n - 1, n - 1);
  for (int i = 1; i < n; ++i)
    for (int j = 1; j < n; ++j) {
      const cplx left = root_of_unity(n, -static_cast<long long>(a) * i) - root_of_unity(n, -static_cast<long long>(b) * i);
      const cplx right = root_of_unity(n, static_cast<long long>(b) * j) - root_of_unity(n, static_cast<long long>(a) * j);
      psi(i - 1, j - 1) = (i == j ? 1.0 : 0.0) + left * right / static_cast<double>(n);
    }
  chop(psi);
  return psi;
}

UnitaryRep standard_irrep_sym(const GroupPtr& sn) {
  if (sn->family() != GroupFamily::symmetric) throw ValidationError("standard irrep needs a symmetric group");
  const int n = sn->degree();
  if (n < 3 || n > 8) throw ValidationError("standard irrep supported for 3 <= n <= 8");
  std::string label = n == 3 ? "lambda" : (n == 4 ? "lambda1" : "(" + std::to_string(n - 1) + ",1)");
  UnitaryRep rep = make_rep(sn, label, n - 1, [&](std::size_t e) { return standard_irrep_matrix(sn->key(e)); });
  ensure_valid(rep);
  return rep;
}

UnitaryRep standard_irrep_sym(int n) { return standard_irrep_sym(build_symmetric_group(n)); }

UnitaryRep quaternion_irrep_2d(const GroupPtr& q) {
  if (q->family() != GroupFamily::quaternion) throw ValidationError("quaternion irrep needs group q");
  const cplx I(0.0, 1.0);
  CMatrix unit[4];
  unit[0] = CMatrix::Identity(2, 2);
  unit[1].resize(2, 2);
  unit[1] << 0.0, 1.0, -1.0, 0.0;  // iσ_y
  unit[2].resize(2, 2);
  unit[2] << I, 0.0, 0.0, -I;      // iσ_z
  unit[3] = unit[1] * unit[2];     // −iσ_x
  UnitaryRep rep = make_rep(q, kQuatIrrep, 2, [&](std::size_t e) {
    const auto& k = q->key(e);
    return CMatrix(static_cast<double>(k[0]) * unit[k[1]]);
  });
  ensure_valid(rep);
  return rep;
}

std::vector<UnitaryRep> one_dim_irreps(const GroupPtr& group) {
  require_table_group(group);
  std::vector<UnitaryRep> out;
  out.push_back(scalar_rep(group, "id", [](std::size_t) { return 1.0; }));
  if (group->family() == GroupFamily::symmetric) {
    out.push_back(scalar_rep(group, "sgn", [&](std::size_t e) { return double(parity(group->key(e))); }));
  } else {
    // t_u is +1 on ±e and ±u, −1 on the other two units
    for (int u = 1; u <= 3; ++u)
      out.push_back(scalar_rep(group, "t" + std::to_string(u), [&, u](std::size_t e) {
        const int unit = group->key(e)[1];
        return (unit == 0 || unit == u) ? 1.0 : -1.0;
      }));
  }
  for (const auto& r : out) ensure_valid(r);
  return out;
}

UnitaryRep defining_rep(const GroupPtr& group) {
  switch (group->family()) {
    case GroupFamily::symmetric:
      return make_rep(group, "defining", group->degree(),
                      [&](std::size_t e) { return permutation_matrix(group->key(e)); });
    case GroupFamily::monomial: {
      const int d = group->degree();
      const int n = group->root_order();
      return make_rep(group, "defining", d, [&, d, n](std::size_t e) {
        const auto& k = group->key(e);
        CMatrix m = CMatrix::Zero(d, d);
        for (int j = 0; j < d; ++j) m(k[d + j], j) = root_of_unity(n, k[k[d + j]]);
        return m;
      });
    }
    case GroupFamily::quaternion:
      return quaternion_irrep_2d(group);
  }
  throw std::logic_error("unreachable");
}

CharacterTable character_table(const GroupPtr& group) {
  require_table_group(group);
  CharacterTable t;
  t.group = group;
  const auto& classes = group->classes();

  // rows keyed by a class signature, then laid out in the group's class order
  std::vector<std::vector<double>> rows;
  std::function<std::size_t(std::size_t)> column;
  std::vector<std::vector<int>> sigs;
  if (group->family() == GroupFamily::quaternion) {
    t.labels = {"id", "t1", "t2", "t3", "t4"};
    t.dims = {1, 1, 1, 1, 2};
    // columns: e, −e, ±i, ±j, ±k
    rows = {{1, 1, 1, 1, 1}, {1, 1, 1, -1, -1}, {1, 1, -1, 1, -1}, {1, 1, -1, -1, 1}, {2, -2, 0, 0, 0}};
    column = [&](std::size_t rep) {
      const auto& k = group->key(rep);
      return k[1] == 0 ? (k[0] > 0 ? 0u : 1u) : static_cast<std::size_t>(k[1] + 1);
    };
  } else if (group->degree() == 3) {
    t.labels = {"id", "sgn", "lambda"};
    t.dims = {1, 1, 2};
    sigs = {{1, 1, 1}, {2, 1}, {3}};
    rows = {{1, 1, 1}, {1, -1, 1}, {2, 0, -1}};
  } else {
    t.labels = {"id", "sgn", "lambda2", "lambda1", "lambda3"};
    t.dims = {1, 1, 2, 3, 3};
    // columns: (1111), (211), (22), (31), (4); lambda1 is the (3,1) irrep, lambda3 = lambda1 ⊗ sgn
    sigs = {{1, 1, 1, 1}, {2, 1, 1}, {2, 2}, {3, 1}, {4}};
    rows = {{1, 1, 1, 1, 1}, {1, -1, 1, 1, -1}, {2, 0, 2, -1, 0}, {3, 1, -1, 0, -1}, {3, -1, -1, 0, 1}};
  }
  if (!column) {
    column = [&](std::size_t rep) {
      const auto ct = cycle_type(group->key(rep));
      for (std::size_t c = 0; c < sigs.size(); ++c)
        if (sigs[c] == ct) return c;
      throw std::logic_error("unknown cycle type");
    };
  }
  if (classes.size() != rows.front().size()) throw std::logic_error("class count mismatch");
  t.values.assign(rows.size(), std::vector<cplx>(classes.size()));
  for (std::size_t c = 0; c < classes.size(); ++c) {
    const std::size_t col = column(classes[c].front());
    for (std::size_t a = 0; a < rows.size(); ++a) t.values[a][c] = rows[a][col];
  }

  // orthonormality and completeness guard against transcription slips
  const double order = static_cast<double>(group->order());
  int dim_sq = 0;
  for (std::size_t a = 0; a < rows.size(); ++a) {
    dim_sq += t.dims[a] * t.dims[a];
    if (std::abs(t.values[a][group->class_of(group->identity())] - cplx(t.dims[a])) > 0) throw std::logic_error("bad dim");
    for (std::size_t b = 0; b < rows.size(); ++b) {
      cplx s = 0.0;
      for (std::size_t c = 0; c < classes.size(); ++c)
        s += static_cast<double>(classes[c].size()) * t.values[a][c] * std::conj(t.values[b][c]);
      if (std::abs(s / order - (a == b ? 1.0 : 0.0)) > 1e-10)
        throw std::logic_error("character table of " + group->name() + " is not orthonormal");
    }
  }
  if (dim_sq != static_cast<int>(group->order())) throw std::logic_error("character table incomplete");
  return t;
}

double irreducibility_norm(const std::vector<cplx>& chi, const FiniteGroup& group) {
  if (chi.size() != group.order()) throw ValidationError("character length does not match group order");
  double s = 0.0;
  for (const auto& c : chi) s += std::norm(c);
  return s / static_cast<double>(group.order());
}

RepReport verify_rep(const UnitaryRep& rep, bool exhaustive) {
  RepReport r;
  const FiniteGroup& g = *rep.group;
  const std::size_t n = g.order();
  r.exhaustive = exhaustive;
  const CMatrix id = CMatrix::Identity(rep.dim, rep.dim);
  r.identity_error = max_abs_diff(rep(g.identity()), id);
  for (std::size_t a = 0; a < n; ++a) {
    r.unitarity_error = std::max(r.unitarity_error, max_abs_diff(rep(a) * rep(a).adjoint(), id));
    if (exhaustive) {
      for (std::size_t b = 0; b < n; ++b)
        r.homomorphism_error = std::max(r.homomorphism_error, max_abs_diff(rep(g.multiply(a, b)), rep(a) * rep(b)));
    } else {
      for (std::size_t b : g.generators())
        r.homomorphism_error = std::max(r.homomorphism_error, max_abs_diff(rep(g.multiply(a, b)), rep(a) * rep(b)));
    }
  }
  const auto chi = rep.character();
  for (const auto& cls : g.classes())
    for (std::size_t x : cls) r.class_function_error = std::max(r.class_function_error, std::abs(chi[x] - chi[cls.front()]));
  r.irreducibility = irreducibility_norm(chi, g);
  return r;
}

UnitaryRep rep_by_name(const GroupPtr& group, std::string_view name) {
  const std::string n(name);
  if (n == "defining" || n == "natural") return defining_rep(group);
  if (group->family() == GroupFamily::quaternion) {
    if (n == "t4" || n == "standard") return quaternion_irrep_2d(group);
  } else if (group->family() == GroupFamily::symmetric) {
    const int deg = group->degree();
    if (n == "standard" || (deg == 3 && n == "lambda") || (deg == 4 && n == "lambda1"))
      return standard_irrep_sym(group);
    if (deg == 4 && n == "lambda3") {
      UnitaryRep std_rep = standard_irrep_sym(group);
      const auto sgn = one_dim_irreps(group)[1];
      for (std::size_t e = 0; e < group->order(); ++e) std_rep.matrices[e] *= sgn(e)(0, 0);
      std_rep.label = "lambda3";
      return std_rep;
    }
  } else {
    throw ValidationError("MU(d,n) only exposes the defining representation");
  }
  if (group->family() != GroupFamily::monomial && (group->family() == GroupFamily::quaternion || group->degree() <= 4)) {
    for (auto& r : one_dim_irreps(group))
      if (r.label == n) return r;
  }
  throw ValidationError("unknown irrep " + n + " for group " + group->name());
}

}  // namespace covmap
