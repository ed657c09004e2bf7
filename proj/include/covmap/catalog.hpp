#pragma once

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "covmap/covmaps.hpp"
#include "covmap/positivity.hpp"

namespace covmap {

// ---- S(3), U = λ, l_id = 1 ----
struct S3Params {
  double l_sgn = 0;
  double l_lambda = 0;
  std::vector<double> spectral() const { return {1.0, l_sgn, l_lambda}; }
};
bool s3_exact_positive(const S3Params& p);
double s3_positivity_form(const S3Params& p, double theta);
// Closed form of Φ(P) for P = |p⟩⟨p|.
CMatrix s3_image_of_pure_state(const S3Params& p, cplx p1, cplx p2);

// ---- Q, U = t4 ----
struct QuatParams {
  double l_id = 1;
  double l_t1 = 0;
  double l_t2 = 0;
  double l_t3 = 0;
  std::vector<double> spectral() const { return {l_id, l_t1, l_t2, l_t3}; }
  std::array<double, 4> array() const { return {l_id, l_t1, l_t2, l_t3}; }
  static QuatParams from(const std::array<double, 4>& a) { return {a[0], a[1], a[2], a[3]}; }
};
bool quat_exact_positive(const QuatParams& p);
bool quat_cp(const QuatParams& p, double tol = 1e-12);
// δ = I l, I = (1/2)[[1,1,1,1],[1,1,−1,−1],[1,−1,1,−1],[1,−1,−1,1]]
std::array<double, 4> quat_delta_transform(const std::array<double, 4>& l);
LinearMapOnMatrices quat_map(const QuatParams& p);

struct QuatDecomposition {
  QuatParams psi1;
  QuatParams psi2;  // Φ = Ψ1 + Ψ2∘T
  int negative_slot = -1;  // index of the negative δ (id, t1, t2, t3), −1 when the input is CP
  double reconstruction_error = 0;
};
QuatDecomposition quat_decompose(const QuatParams& p, double tol = 1e-12);

// ---- S(4), U = λ1, l_id = 1 ----
struct S4Params {
  double l_lmb1 = 0;
  double l_lmb2 = 0;
  double l_lmb3 = 0;
  std::vector<double> spectral() const { return {1.0, l_lmb1, l_lmb2, l_lmb3}; }
};
// 9×9 Choi matrix from the a_1..a_8 coefficient formulas.
ChoiMatrix s4_choi(const S4Params& p);
// (value, multiplicity) for the λ1, λ2, λ3 and id eigenvalues.
std::vector<std::pair<double, int>> s4_eigenvalues(const S4Params& p);
struct S4Regions {
  bool in_large = false;
  bool in_small = false;
};
S4Regions s4_reduction_regions(const S4Params& p);

// ---- MU(d,n) map M(α,β) ----
struct MUParams {
  int d = 3;
  double alpha = 0;
  double beta = 0;
  std::vector<double> spectral() const { return {1.0, alpha, beta}; }
};
LinearMapOnMatrices mu_map(const MUParams& p);
struct MuCp {
  bool cp = false;
  std::vector<double> values;  // printed forms for d = 3, plain spectrum otherwise
};
MuCp mu_cp(const MUParams& p, double tol = 1e-9);
double mu_block_form(const MUParams& p, const RVector& x, const RVector& y);
bool mu_exact_positive(const MUParams& p);
bool mu_cop(const MUParams& p);
// Necessary-condition rows for fixed product vectors: value and printed value.
struct TableRow {
  RVector x;
  RVector y;
  double value = 0;    // block form at (x, y)
  double printed = 0;  // printed expression
  std::string condition;
};
std::vector<TableRow> mu_table_rows(const MUParams& p);
// Pair x = −(e1+e2), y = e2−e1 at α = (d−2)β/d + 2/d + ε/(2d).
MUParams mu_necessity_point(int d, double beta, double eps);

// ---- generalized Choi map Λ[a,b,c], d = 3 ----
struct ChoiParams {
  double a = 0;
  double b = 0;
  double c = 0;
};
LinearMapOnMatrices gen_choi_map(const ChoiParams& p);
ChoiMatrix gen_choi_choi_printed(const ChoiParams& p);
bool gen_choi_positive_not_cp(const ChoiParams& p);
bool gen_choi_nondecomposable(const ChoiParams& p);
std::optional<ChoiParams> mu_choi_correspondence(double alpha, double beta);

const RMatrix& s4_mu_similarity_matrix();
double s4_mu_similarity(double alpha, double beta);

struct ChoiLine {
  ChoiParams params;
  bool in_domain = false;  // a, b, c >= 0 and a + b + c > 0
  double proportionality = 0;  // κ with J(Λ) = κ J(Φ^{λ1}(l,l,l)), least squares
  double residual = 0;          // ‖J(Λ) − κ J(Φ)‖_max
};
ChoiLine s4_choi_line(double l);

// ---- unital qubit channels ----
struct SSV {
  std::array<double, 3> eta{};
  std::optional<RMatrix> r1;
  std::optional<RMatrix> r2;
};
CMatrix bloch_state(const std::array<double, 3>& r);
struct FujiwaraAlgoet {
  bool cp = false;
  bool p = false;
};
FujiwaraAlgoet fujiwara_algoet(const SSV& s);
RMatrix quat_induced_bloch(const QuatParams& p);
// Bloch matrix of a unital qubit map read off from basis probes.
RMatrix bloch_matrix(const LinearMapOnMatrices& map);
// Unital qubit map with Bloch matrix R1 D(η) R2.
LinearMapOnMatrices ssv_channel(const SSV& s);
QuatParams quat_from_ssv(const std::array<double, 3>& eta);
RMatrix rotation_from_quaternion(double w, double x, double y, double z);
const std::array<CMatrix, 3>& pauli();

// Exact positivity predicate registered for a family key (s3, q, mu:d,n), if any.
std::optional<ExactPredicate> exact_predicate(const ProjectorFamily& family);

}  // namespace covmap
