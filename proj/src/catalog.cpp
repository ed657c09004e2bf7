#include "covmap/catalog.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <stdexcept>

#include "covmap/errors.hpp"

namespace covmap {

namespace {

constexpr double kSlack = 1e-12;  // closed regions, rounding at vertices

const ProjectorFamily& cached_family(const std::string& key) {
  static std::mutex mu;
  static std::vector<std::pair<std::string, std::unique_ptr<ProjectorFamily>>> cache;
  std::lock_guard<std::mutex> lock(mu);
  for (const auto& [k, f] : cache)
    if (k == key) return *f;
  cache.emplace_back(key, std::make_unique<ProjectorFamily>(family_for(key)));
  return *cache.back().second;
}

const RMatrix& involution_i() {
  static const RMatrix m = [] {
    RMatrix i(4, 4);
    i << 1, 1, 1, 1, 1, 1, -1, -1, 1, -1, 1, -1, 1, -1, -1, 1;
    i *= 0.5;
    if (((i * i) - RMatrix::Identity(4, 4)).cwiseAbs().maxCoeff() > 1e-15)
      throw std::logic_error("I is not involutive");
    return i;
  }();
  return m;
}

}  // namespace

bool s3_exact_positive(const S3Params& p) { return std::abs(p.l_sgn) <= 1.0 && std::abs(p.l_lambda) <= 1.0; }

double s3_positivity_form(const S3Params& p, double theta) {
  const double s = std::sin(theta), c = std::cos(theta);
  return 1.0 - p.l_sgn * p.l_sgn * s * s - p.l_lambda * p.l_lambda * c * c;
}

CMatrix s3_image_of_pure_state(const S3Params& p, cplx p1, cplx p2) {
  const double z = std::norm(p1) - std::norm(p2);
  CMatrix m(2, 2);
  m(0, 0) = 0.5 * (1.0 + p.l_sgn * z);
  m(1, 1) = 0.5 * (1.0 - p.l_sgn * z);
  m(0, 1) = p.l_lambda * p1 * std::conj(p2);
  m(1, 0) = p.l_lambda * std::conj(p1) * p2;
  return m;
}

bool quat_exact_positive(const QuatParams& p) {
  return std::abs(p.l_t1) <= p.l_id && std::abs(p.l_t2) <= p.l_id && std::abs(p.l_t3) <= p.l_id;
}

bool quat_cp(const QuatParams& p, double tol) {
  return p.l_id + p.l_t2 >= std::abs(p.l_t1 + p.l_t3) - tol && p.l_id - p.l_t2 >= std::abs(p.l_t1 - p.l_t3) - tol;
}

std::array<double, 4> quat_delta_transform(const std::array<double, 4>& l) {
  const RMatrix& i = involution_i();
  std::array<double, 4> out{};
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) out[r] += i(r, c) * l[c];
  return out;
}

LinearMapOnMatrices quat_map(const QuatParams& p) {
  const ProjectorFamily& f = cached_family("q");
  return assemble(f.make_map(p.spectral()), f);
}

QuatDecomposition quat_decompose(const QuatParams& p, double tol) {
  const auto delta = quat_delta_transform(p.array());
  QuatDecomposition out;
  int negatives = 0;
  for (int k = 0; k < 4; ++k)
    if (delta[k] < -tol) {
      ++negatives;
      out.negative_slot = k;
    }
  if (negatives == 0) {
    out.psi1 = p;
    out.psi2 = {0, 0, 0, 0};
    out.negative_slot = -1;
    return out;
  }
  if (negatives > 1) throw ValidationError("more than one negative Choi eigenvalue: not a positive map");
  const int n = out.negative_slot;

  // Transposition flips the σ_y sector, i.e. t1.  Choi eigenvalues of Ψ2∘T are K γ where γ are
  // those of Ψ2 and K = I·diag(1,−1,1,1)·I.  Put γ on the single slot p that can absorb δ_n.
  const RMatrix& I = involution_i();
  RMatrix flip = RMatrix::Identity(4, 4);
  flip(1, 1) = -1.0;
  const RMatrix K = I * flip * I;
  Eigen::Vector4d d;
  for (int k = 0; k < 4; ++k) d(k) = delta[k];
  for (int partner = 0; partner < 4; ++partner) {
    if (partner == n || std::abs(K(n, partner)) < 1e-12) continue;
    const double g = d(n) / K(n, partner);
    if (g < 0) continue;
    Eigen::Vector4d gamma = Eigen::Vector4d::Zero();
    gamma(partner) = g;
    const Eigen::Vector4d eps = d - K * gamma;
    if (eps.minCoeff() < -tol) continue;
    const Eigen::Vector4d l1 = I * eps;
    const Eigen::Vector4d l2 = I * gamma;
    out.psi1 = {l1(0), l1(1), l1(2), l1(3)};
    out.psi2 = {l2(0), l2(1), l2(2), l2(3)};
    const LinearMapOnMatrices phi = quat_map(p);
    const LinearMapOnMatrices rebuilt{2, quat_map(out.psi1).mat + compose_with_transpose(quat_map(out.psi2)).mat};
    out.reconstruction_error = max_abs_diff(phi.mat, rebuilt.mat);
    return out;
  }
  throw ValidationError("no CP + CP∘T decomposition found: input is not positive");
}

ChoiMatrix s4_choi(const S4Params& p) {
  const double l1 = p.l_lmb1, l2 = p.l_lmb2, l3 = p.l_lmb3;
  const double a1 = (l2 + 3 * l3 + 2) / 6, a2 = (l2 - 3 * l3 + 2) / 6;
  const double a3 = (1 - l2) / 3, a4 = (2 * l2 + 1) / 3;
  const double a5 = (l1 + l3) / 2, a6 = (l1 - l3) / 2;
  const double a7 = (l1 + l2) / 2, a8 = (l1 - l2) / 2;
  const double rows[9][9] = {
      {a1, 0, 0, 0, a5, 0, 0, 0, a7}, {0, a3, 0, 0, 0, a6, 0, 0, 0}, {0, 0, a2, 0, 0, 0, a8, 0, 0},
      {0, 0, 0, a3, 0, 0, 0, a6, 0},  {a5, 0, 0, 0, a4, 0, 0, 0, a5}, {0, a6, 0, 0, 0, a3, 0, 0, 0},
      {0, 0, a8, 0, 0, 0, a2, 0, 0},  {0, 0, 0, a6, 0, 0, 0, a3, 0},  {a7, 0, 0, 0, a5, 0, 0, 0, a1}};
  CMatrix j(9, 9);
  for (int r = 0; r < 9; ++r)
    for (int c = 0; c < 9; ++c) j(r, c) = rows[r][c];
  return {3, j};
}

std::vector<std::pair<double, int>> s4_eigenvalues(const S4Params& p) {
  const double l1 = p.l_lmb1, l2 = p.l_lmb2, l3 = p.l_lmb3;
  return {{(2 + 3 * l1 - 2 * l2 - 3 * l3) / 6, 3},
          {(2 - 3 * l1 + 4 * l2 - 3 * l3) / 6, 2},
          {(2 - 3 * l1 - 2 * l2 + 3 * l3) / 6, 3},
          {(1 + 3 * l1 + 2 * l2 + 3 * l3) / 3, 1}};
}

S4Regions s4_reduction_regions(const S4Params& p) {
  const double l1 = p.l_lmb1, l2 = p.l_lmb2, l3 = p.l_lmb3;
  const double e3 = (2 - 3 * l1 - 2 * l2 + 3 * l3) / 6;
  const double e1 = (2 + 3 * l1 - 2 * l2 - 3 * l3) / 6;
  const double e2 = (2 - 3 * l1 + 4 * l2 - 3 * l3) / 6;
  const double eid = (1 + 3 * l1 + 2 * l2 + 3 * l3) / 3;
  S4Regions r;
  r.in_large = 0.5 - e3 >= 0 && 0.5 - e1 >= 0 && 0.5 - e2 >= 0 && eid <= 0;
  // the second printed system repeats the id form in its third row
  r.in_small = 0.5 - e3 >= 0 && 0.5 - e1 >= 0 && 0.5 - eid >= 0 && eid <= 0;
  return r;
}

LinearMapOnMatrices mu_map(const MUParams& p) {
  const int d = p.d;
  if (d < 2) throw ValidationError("MU map requires d >= 2");
  const int D = d * d;
  CMatrix m = CMatrix::Zero(D, D);
  // M(X) = tr(X)(1−β)/d·1 + α(X − diag X) + β diag X
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      const int col = i * d + j;
      if (i != j) {
        m(col, col) = p.alpha;
        continue;
      }
      for (int k = 0; k < d; ++k) m(k * d + k, col) = (1.0 - p.beta) / d;
      m(col, col) += p.beta;
    }
  return {d, m};
}

MuCp mu_cp(const MUParams& p, double tol) {
  MuCp r;
  if (p.d == 3) {
    const double a = p.alpha, b = p.beta;
    r.values = {(1 - b) / 3, (-3 * a + 2 * b + 1) / 3, (6 * a + 2 * b + 1) / 3};
    r.cp = std::all_of(r.values.begin(), r.values.end(), [](double v) { return v >= 0; });
    return r;
  }
  const PsdResult psd = is_cp(choi(mu_map(p)), tol);
  const RVector ev = hermitian_eigenvalues(choi(mu_map(p)).matrix);
  r.values.assign(ev.data(), ev.data() + ev.size());
  r.cp = psd.holds;
  return r;
}

double mu_block_form(const MUParams& p, const RVector& x, const RVector& y) {
  const int d = p.d;
  if (x.size() != d || y.size() != d) throw ValidationError("vector length must equal d");
  double cross = 0, off = 0, diag = 0;
  for (int i = 0; i < d; ++i) {
    diag += x(i) * x(i) * y(i) * y(i);
    for (int j = 0; j < d; ++j) {
      if (i == j) continue;
      off += x(i) * x(i) * y(j) * y(j);
      if (i < j) cross += x(i) * y(i) * x(j) * y(j);
    }
  }
  return (2.0 * d * p.alpha * cross + (1 - p.beta) * off + (1 + (d - 1) * p.beta) * diag) / d;
}

bool mu_exact_positive(const MUParams& p) {
  const int d = p.d;
  if (d < 3) throw ValidationError("exact MU region requires d >= 3");
  const double a = p.alpha, b = p.beta, m = 1.0 / (d - 1);
  return b <= 1 + kSlack && b >= -m - kSlack && a >= -m - kSlack &&
         b >= (d / (d - 2.0)) * a - 2.0 / (d - 2.0) - kSlack;
}

bool mu_cop(const MUParams& p) {
  if (p.d != 3) return is_cop(mu_map(p)).holds;
  const double a = p.alpha, b = p.beta;
  return (1 - 3 * a - b) / 3 >= 0 && (1 + 3 * a - b) / 3 >= 0 && (1 + 2 * b) / 3 >= 0;
}

std::vector<TableRow> mu_table_rows(const MUParams& p) {
  const int d = p.d;
  const RVector ones = RVector::Ones(d);
  RVector e1 = RVector::Zero(d), e2 = RVector::Zero(d);
  e1(0) = 1;
  e2(1) = 1;
  std::vector<TableRow> rows;
  rows.push_back({ones, ones, 0, d * (1 + (d - 1) * p.alpha), "alpha >= -1/(d-1)"});
  rows.push_back({RVector(e2 - e1), ones, 0, (d - 1) * (1 - p.alpha), "alpha <= 1"});
  rows.push_back({e1, e1, 0, (1 + (d - 1) * p.beta) / d, "beta >= -1/(d-1)"});
  rows.push_back({e1, e2, 0, (1 - p.beta) / d, "beta <= 1"});
  for (auto& r : rows) r.value = mu_block_form(p, r.x, r.y);
  return rows;
}

MUParams mu_necessity_point(int d, double beta, double eps) {
  return {d, (d - 2.0) * beta / d + 2.0 / d + eps / (2.0 * d), beta};
}

LinearMapOnMatrices gen_choi_map(const ChoiParams& p) {
  const double s = p.a + p.b + p.c;
  if (!(s > 0)) throw ValidationError("generalized Choi map needs a + b + c > 0");
  const double dm[3][3] = {{p.a, p.b, p.c}, {p.c, p.a, p.b}, {p.b, p.c, p.a}};
  CMatrix m = CMatrix::Zero(9, 9);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      if (i == j) {
        for (int k = 0; k < 3; ++k) m(k * 3 + k, i * 3 + i) = dm[i][k] / s;
      } else {
        m(i * 3 + j, i * 3 + j) = -1.0 / s;
      }
    }
  return {3, m};
}

ChoiMatrix gen_choi_choi_printed(const ChoiParams& p) {
  const double s = p.a + p.b + p.c;
  if (!(s > 0)) throw ValidationError("generalized Choi map needs a + b + c > 0");
  const double diag[9] = {p.a, p.b, p.c, p.c, p.a, p.b, p.b, p.c, p.a};
  CMatrix j = CMatrix::Zero(9, 9);
  for (int k = 0; k < 9; ++k) j(k, k) = diag[k];
  for (int r : {0, 4, 8})
    for (int c : {0, 4, 8})
      if (r != c) j(r, c) = -1.0;
  return {3, j / s};
}

bool gen_choi_positive_not_cp(const ChoiParams& p) {
  if (p.a < 0 || p.b < 0 || p.c < 0) return false;
  if (!(p.a <= 2 && p.a + p.b + p.c >= 2)) return false;
  if (p.a <= 1 && p.b * p.c < (1 - p.a) * (1 - p.a)) return false;
  return true;
}

bool gen_choi_nondecomposable(const ChoiParams& p) {
  if (p.a < 0 || p.b < 0 || p.c < 0) return false;
  if (!(p.a <= 2 && p.a + p.b + p.c >= 2)) return false;
  const double bc = p.b * p.c, upper = (2 - p.a) * (2 - p.a) / 4;
  if (p.a <= 1) return (1 - p.a) * (1 - p.a) <= bc && bc <= upper;
  return bc <= upper;
}

std::optional<ChoiParams> mu_choi_correspondence(double alpha, double beta) {
  if (!(alpha < 0)) return std::nullopt;
  const double s = -1.0 / alpha;
  const double b = s * (1 - beta) / 3;
  return ChoiParams{s * ((1 - beta) / 3 + beta), b, b};
}

const RMatrix& s4_mu_similarity_matrix() {
  static const RMatrix a = [] {
    RMatrix m(9, 9);
    const double t = 1.0 / 3.0;
    m << 0, 0, t, 0, 1, 0, -t, 0, 0,  //
        0, 1, 0, 0, 0, 0, 0, 0, 0,    //
        0, 0, 0, 1, 0, 0, 0, 0, 0,    //
        0, 0, 0, 0, 0, 1, 0, 0, 0,    //
        0, 0, -2 * t, 0, 1, 0, 2 * t, 0, 0,  //
        0, 0, 1, 0, 0, 0, 1, 0, 0,    //
        0, 0, 0, 0, 0, 0, 0, 1, 0,    //
        -1, 0, 0, 0, 0, 0, 0, 0, 1,   //
        1, 0, t, 0, -1, 0, -t, 0, 1;
    if (std::abs(m.determinant()) < 1e-9) throw std::logic_error("similarity matrix A is singular");
    return m;
  }();
  return a;
}

double s4_mu_similarity(double alpha, double beta) {
  const ChoiMatrix jm = choi(mu_map({3, alpha, beta}));
  const ProjectorFamily& f = cached_family("s4");
  const ChoiMatrix js = choi(assemble(f.make_map(std::vector<double>{1.0, alpha, beta, alpha}), f));
  const CMatrix a = s4_mu_similarity_matrix().cast<cplx>();
  return max_abs_diff(jm.matrix, a * js.matrix * a.inverse());
}

ChoiLine s4_choi_line(double l) {
  if (l == 0.0) throw ValidationError("s4_choi_line is undefined at l = 0");
  ChoiLine out;
  out.params = {-(2 * l + 1) / (3 * l), -(1 - l) / (3 * l), -(1 - l) / (3 * l)};
  const auto& p = out.params;
  out.in_domain = p.a >= 0 && p.b >= 0 && p.c >= 0 && p.a + p.b + p.c > 0;
  const double s = p.a + p.b + p.c;
  if (std::abs(s) < 1e-300) return out;
  // J(Λ) evaluated from the formula even off-domain so the proportionality can be reported
  const double diag[9] = {p.a, p.b, p.c, p.c, p.a, p.b, p.b, p.c, p.a};
  CMatrix jl = CMatrix::Zero(9, 9);
  for (int k = 0; k < 9; ++k) jl(k, k) = diag[k] / s;
  for (int r : {0, 4, 8})
    for (int c : {0, 4, 8})
      if (r != c) jl(r, c) = -1.0 / s;
  const CMatrix jp = s4_choi({l, l, l}).matrix;
  const cplx num = (jp.adjoint() * jl).trace();
  const cplx den = (jp.adjoint() * jp).trace();
  out.proportionality = (num / den).real();
  out.residual = max_abs_diff(jl, out.proportionality * jp);
  return out;
}

const std::array<CMatrix, 3>& pauli() {
  static const std::array<CMatrix, 3> s = [] {
    std::array<CMatrix, 3> out;
    out[0].resize(2, 2);
    out[0] << 0.0, 1.0, 1.0, 0.0;
    out[1].resize(2, 2);
    out[1] << 0.0, cplx(0, -1), cplx(0, 1), 0.0;
    out[2].resize(2, 2);
    out[2] << 1.0, 0.0, 0.0, -1.0;
    return out;
  }();
  return s;
}

CMatrix bloch_state(const std::array<double, 3>& r) {
  const double n2 = r[0] * r[0] + r[1] * r[1] + r[2] * r[2];
  if (n2 > 1.0 + 1e-12) throw ValidationError("Bloch vector longer than 1");
  CMatrix rho = 0.5 * CMatrix::Identity(2, 2);
  for (int i = 0; i < 3; ++i) rho += 0.5 * r[i] * pauli()[i];
  return rho;
}

FujiwaraAlgoet fujiwara_algoet(const SSV& s) {
  const auto& e = s.eta;
  FujiwaraAlgoet r;
  r.cp = 1 + e[2] >= std::abs(e[0] + e[1]) && 1 - e[2] >= std::abs(e[0] - e[1]);
  r.p = std::abs(e[0]) <= 1 && std::abs(e[1]) <= 1 && std::abs(e[2]) <= 1;
  return r;
}

RMatrix quat_induced_bloch(const QuatParams& p) {
  if (p.l_id != 1.0) throw ValidationError("induced Bloch matrix assumes l_id = 1");
  RMatrix m = RMatrix::Zero(3, 3);
  m(0, 0) = p.l_t3;
  m(1, 1) = p.l_t1;
  m(2, 2) = p.l_t2;
  return m;
}

RMatrix bloch_matrix(const LinearMapOnMatrices& map) {
  if (map.dim != 2) throw ValidationError("Bloch matrix needs a qubit map");
  RMatrix t(3, 3);
  for (int b = 0; b < 3; ++b) {
    std::array<double, 3> r{0, 0, 0};
    r[b] = 1.0;
    const CMatrix out = map.apply(bloch_state(r)) - map.apply(bloch_state({0, 0, 0}));
    for (int a = 0; a < 3; ++a) t(a, b) = (pauli()[a] * out).trace().real();
  }
  return t;
}

RMatrix rotation_from_quaternion(double w, double x, double y, double z) {
  const double n = std::sqrt(w * w + x * x + y * y + z * z);
  if (n == 0) throw ValidationError("zero quaternion");
  w /= n, x /= n, y /= n, z /= n;
  RMatrix r(3, 3);
  r << 1 - 2 * (y * y + z * z), 2 * (x * y - z * w), 2 * (x * z + y * w),  //
      2 * (x * y + z * w), 1 - 2 * (x * x + z * z), 2 * (y * z - x * w),   //
      2 * (x * z - y * w), 2 * (y * z + x * w), 1 - 2 * (x * x + y * y);
  return r;
}

LinearMapOnMatrices ssv_channel(const SSV& s) {
  RMatrix t = RMatrix::Zero(3, 3);
  for (int i = 0; i < 3; ++i) t(i, i) = s.eta[i];
  for (const auto* r : {&s.r1, &s.r2}) {
    if (!r->has_value()) continue;
    const RMatrix& m = **r;
    if (m.rows() != 3 || m.cols() != 3 || (m * m.transpose() - RMatrix::Identity(3, 3)).cwiseAbs().maxCoeff() > 1e-10 ||
        std::abs(m.determinant() - 1.0) > 1e-10)
      throw ValidationError("rotation is not in SO(3)");
  }
  if (s.r1) t = *s.r1 * t;
  if (s.r2) t = t * *s.r2;
  // X = (tr X · 1 + Σ_b tr(σ_b X) σ_b)/2  ↦  (tr X · 1 + Σ_a (T x)_a σ_a)/2
  CMatrix m(4, 4);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      const CMatrix e = unit_matrix(2, i, j);
      Eigen::Vector3cd x;
      for (int b = 0; b < 3; ++b) x(b) = (pauli()[b] * e).trace();
      const Eigen::Vector3cd tx = t.cast<cplx>() * x;
      CMatrix out = e.trace() * CMatrix::Identity(2, 2);
      for (int a = 0; a < 3; ++a) out += tx(a) * pauli()[a];
      m.col(i * 2 + j) = vec(CMatrix(0.5 * out));
    }
  return {2, m};
}

QuatParams quat_from_ssv(const std::array<double, 3>& eta) { return {1.0, eta[1], eta[2], eta[0]}; }

std::optional<ExactPredicate> exact_predicate(const ProjectorFamily& family) {
  const std::string& g = family.group_name();
  if (g == "s3" && family.irrep_label() == "lambda")
    return ExactPredicate([](const std::vector<double>& l) {
      return l[0] > 0 && s3_exact_positive({l[1] / l[0], l[2] / l[0]});
    });
  if (g == "q" && family.irrep_label() == kQuatIrrep)
    return ExactPredicate([](const std::vector<double>& l) {
      return l[0] > 0 && quat_exact_positive({l[0], l[1], l[2], l[3]});
    });
  if (g.rfind("mu:", 0) == 0 && family.dim() >= 3) {
    const int d = family.dim();
    return ExactPredicate([d](const std::vector<double>& l) {
      return l[0] > 0 && mu_exact_positive({d, l[1] / l[0], l[2] / l[0]});
    });
  }
  return std::nullopt;
}

}  // namespace covmap
