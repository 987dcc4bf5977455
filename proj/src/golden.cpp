#include "weinorman/golden.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>

#include <Eigen/LU>

#include "weinorman/propagation.hpp"
#include "weinorman/wei_norman.hpp"

namespace wn::golden {

namespace {

const double kSqrt6 = std::sqrt(6.0);
const double kSqrt23 = std::sqrt(2.0 / 3.0);

void check_generator(int i, int n) {
  if (i < 1 || i > n) throw ValidationError("generator index out of range");
}

void check_length(const RealVector& g, int n) {
  if (g.size() != n) throw ValidationError("gamma has wrong length");
}

// 1-based setter
struct Filler {
  RealMatrix& m;
  void operator()(int r, int c, double v) const { m(r - 1, c - 1) = v; }
};

}  // namespace

RealMatrix su2_exp(int generator, double g) {
  check_generator(generator, 3);
  const double c = std::cos(g), s = std::sin(g);
  RealMatrix m = RealMatrix::Identity(3, 3);
  Filler e{m};
  switch (generator) {
    case 1: e(2, 2, c); e(2, 3, -s); e(3, 2, s); e(3, 3, c); break;
    case 2: e(1, 1, c); e(1, 3, s); e(3, 1, -s); e(3, 3, c); break;
    default: e(1, 1, c); e(1, 2, -s); e(2, 1, s); e(2, 2, c); break;
  }
  return m;
}

RealMatrix su2_xi_canonical(const RealVector& g) {
  check_length(g, 3);
  const double c1 = std::cos(g(0)), s1 = std::sin(g(0)), c2 = std::cos(g(1)), s2 = std::sin(g(1));
  RealMatrix m(3, 3);
  m << 1, 0, s2,
       0, c1, -c2 * s1,
       0, s1, c1 * c2;
  return m;
}

RealMatrix su2_xi_inverse_canonical(const RealVector& g) {
  check_length(g, 3);
  const double c1 = std::cos(g(0)), s1 = std::sin(g(0)), t2 = std::tan(g(1));
  const double sec2 = 1.0 / std::cos(g(1));
  RealMatrix m(3, 3);
  m << 1, s1 * t2, -c1 * t2,
       0, c1, s1,
       0, -sec2 * s1, c1 * sec2;
  return m;
}

RealMatrix su2_xi_zyz(const RealVector& g) {
  check_length(g, 3);
  const double c1 = std::cos(g(0)), s1 = std::sin(g(0)), c2 = std::cos(g(1)), s2 = std::sin(g(1));
  RealMatrix m(3, 3);
  m << 0, -s1, c1 * s2,
       0, c1, s1 * s2,
       1, 0, c2;
  return m;
}

RealMatrix su2_xi_inverse_zyz(const RealVector& g) {
  check_length(g, 3);
  const double c1 = std::cos(g(0)), s1 = std::sin(g(0));
  const double cot2 = 1.0 / std::tan(g(1)), csc2 = 1.0 / std::sin(g(1));
  RealMatrix m(3, 3);
  m << -c1 * cot2, -s1 * cot2, 1,
       -s1, c1, 0,
       c1 * csc2, s1 * csc2, 0;
  return m;
}

RealVector su3_char_poly(int generator) {
  check_generator(generator, 8);
  RealVector p = RealVector::Zero(8);
  if (generator == 1) {
    p(2) = 16; p(4) = 24; p(6) = 9;
  } else if (generator == 5 || generator == 6) {
    p(2) = 6; p(4) = 13; p(6) = 8;
  } else {
    p(2) = 4; p(4) = 9; p(6) = 6;
  }
  return p;
}

std::vector<Root> su3_eigenvalues(int generator) {
  check_generator(generator, 8);
  const complexd i(0.0, 1.0);
  int m1 = 2, m2 = 1;
  double top = 2.0;
  if (generator == 1) {
    m1 = 1; m2 = 2;
  } else if (generator == 5 || generator == 6) {
    top = kSqrt6;
  }
  return {{-top * i, m2}, {-1.0 * i, m1}, {0.0, 2}, {1.0 * i, m1}, {top * i, m2}};
}

RealVector su3_beta(int generator, double g) {
  check_generator(generator, 8);
  const double c = std::cos(g), s = std::sin(g), c2 = std::cos(2 * g), s2 = std::sin(2 * g);
  const double c6 = std::cos(kSqrt6 * g), s6 = std::sin(kSqrt6 * g);
  RealVector b(8);
  b(0) = 1.0;
  b(1) = g;
  if (generator == 1) {
    b(2) = (54 - 64 * c + 10 * c2 + 3 * g * s2) / 36;
    b(3) = (216 * g - 6 * g * c2 - 256 * s + 23 * s2) / 144;
    b(4) = (81 + 47 * c2 + c * (-128 + 30 * g * s)) / 144;
    b(5) = (324 * g - 30 * g * c2 - 512 * s + 109 * s2) / 576;
    b(6) = (9 + 7 * c2 + c * (-16 + 6 * g * s)) / 144;
    b(7) = (36 * g - 6 * g * c2 - 64 * s + 17 * s2) / 576;
  } else if (generator == 5 || generator == 6) {
    b(2) = (325 - 324 * c - c6 - 90 * g * s) / 150;
    b(3) = 13 * g / 6 + 3 * g * c / 5 - 69 * s / 25 - s6 / (150 * kSqrt6);
    b(4) = (200 - 198 * c - 2 * c6 - 105 * g * s) / 150;
    b(5) = (600 * g + 315 * g * c - 909 * s - kSqrt6 * s6) / 450;
    b(6) = (25 - 24 * c - c6 - 15 * g * s) / 150;
    b(7) = (150 * g + 90 * g * c - 234 * s - kSqrt6 * s6) / 900;
  } else {
    b(2) = (81 - 80 * c - c * c - 24 * g * s + s * s) / 36;
    b(3) = (81 * g + 24 * g * c - 104 * s - c * s) / 36;
    b(4) = (27 - 26 * c - c * c - 15 * g * s + s * s) / 18;
    b(5) = (27 * g + 15 * g * c - 41 * s - c * s) / 18;
    b(6) = (9 - 8 * c - c * c - 6 * g * s + s * s) / 36;
    b(7) = (9 * g + 6 * g * c - 14 * s - c * s) / 36;
  }
  return b;
}

RealMatrix su3_exp(int generator, double g) {
  check_generator(generator, 8);
  const double c = std::cos(g), s = std::sin(g), c2 = std::cos(2 * g), s2 = std::sin(2 * g);
  const double C = std::cos(kSqrt6 * g), S = std::sin(kSqrt6 * g);
  RealMatrix m = RealMatrix::Identity(8, 8);
  Filler e{m};
  switch (generator) {
    case 1:
      e(3, 3, c2); e(3, 4, -2 * c * s); e(4, 3, s2); e(4, 4, c2);
      e(5, 5, c2); e(5, 6, -2 * c * s); e(6, 5, s2); e(6, 6, c2);
      e(7, 7, c); e(7, 8, s); e(8, 7, -s); e(8, 8, c);
      break;
    case 2:
      e(3, 3, c); e(3, 4, s); e(4, 3, -s); e(4, 4, c);
      e(5, 5, c); e(5, 6, -s); e(6, 5, s); e(6, 6, c);
      e(7, 7, c2); e(7, 8, -s2); e(8, 7, s2); e(8, 8, c2);
      break;
    case 3:
      e(1, 1, c2); e(1, 2, s * s); e(1, 4, s2);
      e(4, 1, -s2); e(4, 2, c * s); e(4, 4, c2);
      e(5, 5, c); e(5, 7, s); e(6, 6, c); e(6, 8, s);
      e(7, 5, -s); e(7, 7, c); e(8, 6, -s); e(8, 8, c);
      break;
    case 4:
      e(1, 1, c2); e(1, 2, s * s); e(1, 3, -s2);
      e(3, 1, s2); e(3, 2, -c * s); e(3, 3, c2);
      e(5, 5, c); e(5, 8, -s); e(6, 6, c); e(6, 7, s);
      e(7, 6, -s); e(7, 7, c); e(8, 5, s); e(8, 8, c);
      break;
    case 5:
      e(1, 1, (1 + 2 * C) / 3); e(1, 2, (-1 + C) / 3); e(1, 6, kSqrt23 * S);
      e(2, 1, 2 * (-1 + C) / 3); e(2, 2, (2 + C) / 3); e(2, 6, kSqrt23 * S);
      e(3, 3, c); e(3, 7, -s); e(4, 4, c); e(4, 8, s);
      e(6, 1, -kSqrt23 * S); e(6, 2, -S / kSqrt6); e(6, 6, C);
      e(7, 3, s); e(7, 7, c); e(8, 4, -s); e(8, 8, c);
      break;
    case 6:
      e(1, 1, (1 + 2 * C) / 3); e(1, 2, (-1 + C) / 3); e(1, 5, -kSqrt23 * S);
      e(2, 1, 2 * (-1 + C) / 3); e(2, 2, (2 + C) / 3); e(2, 5, -kSqrt23 * S);
      e(3, 3, c); e(3, 8, -s); e(4, 4, c); e(4, 7, -s);
      e(5, 1, kSqrt23 * S); e(5, 2, S / kSqrt6); e(5, 5, C);
      e(7, 4, s); e(7, 7, c); e(8, 3, s); e(8, 8, c);
      break;
    case 7:
      e(2, 1, s * s); e(2, 2, c2); e(2, 8, s2);
      e(3, 3, c); e(3, 5, s); e(4, 4, c); e(4, 6, s);
      e(5, 3, -s); e(5, 5, c); e(6, 4, -s); e(6, 6, c);
      e(8, 1, c * s); e(8, 2, -s2); e(8, 8, c2);
      break;
    default:
      e(2, 1, s * s); e(2, 2, c2); e(2, 7, -s2);
      e(3, 3, c); e(3, 6, s); e(4, 4, c); e(4, 5, -s);
      e(5, 4, s); e(5, 5, c); e(6, 3, -s); e(6, 6, c);
      e(7, 1, -c * s); e(7, 2, s2); e(7, 7, c2);
      break;
  }
  return m;
}

RealMatrix su3_xi_canonical(const RealVector& gamma) {
  check_length(gamma, 8);
  auto g = [&](int k) { return gamma(k - 1); };
  const double c3 = std::cos(g(3)), s3 = std::sin(g(3)), c4 = std::cos(g(4)), s4 = std::sin(g(4));
  const double c5 = std::cos(g(5)), s5 = std::sin(g(5)), c6 = std::cos(g(6)), s6 = std::sin(g(6));
  const double C5 = std::cos(kSqrt6 * g(5)), S5 = std::sin(kSqrt6 * g(5));
  const double C6 = std::cos(kSqrt6 * g(6)), S6 = std::sin(kSqrt6 * g(6));
  const double a = 2 * g(1) - g(2), b = 2 * g(1) + g(2), d = g(1) - 2 * g(2);
  const double ca = std::cos(a), sa = std::sin(a), cb = std::cos(b), sb = std::sin(b);
  const double cd = std::cos(d), sd = std::sin(d);
  const double c23 = std::cos(2 * g(3)), s23 = std::sin(2 * g(3));
  const double c24 = std::cos(2 * g(4)), s24 = std::sin(2 * g(4));
  const double c27 = std::cos(2 * g(7)), s27 = std::sin(2 * g(7));
  const double CC = C5 * C6;

  RealMatrix m = RealMatrix::Zero(8, 8);
  Filler e{m};
  e(1, 1, 1);
  e(2, 2, 1);
  e(1, 4, s23);
  e(3, 3, ca);
  e(4, 3, sa);
  e(3, 4, -sa * c23);
  e(4, 4, ca * c23);

  e(5, 5, cb * c3 * c4 - sb * s3 * s4);
  e(6, 5, c3 * c4 * sb + cb * s3 * s4);
  e(7, 5, -cd * c4 * s3 + c3 * sd * s4);
  e(8, 5, c4 * sd * s3 + cd * c3 * s4);

  e(1, 6, S5 / (2 * kSqrt6) *
              (2 + std::cos(2 * (g(3) - g(4))) + std::cos(2 * (g(3) + g(4)))));
  e(2, 6, kSqrt23 * S5);
  e(3, 6, S5 / (4 * kSqrt6) *
              (-std::cos(a + 2 * g(3) - 2 * g(4)) + std::cos(a - 2 * g(3) + 2 * g(4)) +
               std::cos(a - 2 * (g(3) + g(4))) - std::cos(a + 2 * (g(3) + g(4))) +
               4 * ca * s24));
  e(4, 6, S5 / (2 * kSqrt6) *
              (std::cos(a - 2 * g(4)) - std::cos(a + 2 * g(4)) - 2 * ca * c24 * s23));
  e(5, 6, -C5 * (c3 * c4 * sb + cb * s3 * s4));
  e(6, 6, C5 * (cb * c3 * c4 - sb * s3 * s4));
  e(7, 6, -C5 * (c4 * sd * s3 + cd * c3 * s4));
  e(8, 6, C5 * (-cd * c4 * s3 + c3 * sd * s4));

  e(1, 7, c23 * c6 * s24 * s5 - c5 * s23 * s6);
  e(3, 7, -ca * c24 * c6 * s5 + sa * (c6 * s23 * s24 * s5 + c23 * c5 * s6));
  e(4, 7, -c24 * c6 * sa * s5 - ca * (c6 * s23 * s24 * s5 + c23 * c5 * s6));
  e(5, 7, -sb * (c3 * c5 * c6 * s4 + c4 * s3 * s5 * s6) + cb * (c4 * c5 * c6 * s3 - c3 * s4 * s5 * s6));
  e(6, 7, c4 * s3 * (c5 * c6 * sb + cb * s5 * s6) + c3 * s4 * (cb * c5 * c6 - sb * s5 * s6));
  e(7, 7, sd * (-c5 * c6 * s3 * s4 + c3 * c4 * s5 * s6) + cd * (c3 * c4 * c5 * c6 + s3 * s4 * s5 * s6));
  e(8, 7, c3 * c4 * (-c5 * c6 * sd + cd * s5 * s6) - s3 * s4 * (cd * c5 * c6 + sd * s5 * s6));

  // Column 8.
  e(1, 8, c27 * (c6 * s23 * s5 + c23 * c5 * s24 * s6) +
              ((2 + CC) * s3 * s3 + c23 * (c4 * c4 * (-1 + CC) + 3 * s4 * s4)) * s27 / 3);
  e(2, 8, s27 / 3 * (2 + CC));
  e(3, 8, -c27 * (ca * c24 * c5 * s6 + sa * (c23 * c6 * s5 - c5 * s23 * s24 * s6)) +
              s27 / 6 * (-4 + CC) * (c24 * sa * s23 + ca * s24));
  e(4, 8, c27 * (-c24 * c5 * sa * s6 + ca * (c23 * c6 * s5 - c5 * s23 * s24 * s6)) +
              s27 / 6 * (-4 + CC) * (-ca * c24 * s23 + sa * s24));
  e(5, 8, c27 * (-c4 * s3 * (c5 * c6 * sb + cb * s5 * s6) + c3 * s4 * (-cb * c5 * c6 + sb * s5 * s6)) +
              s27 / kSqrt6 * (C6 * (c3 * c4 * sb + cb * s3 * s4) * S5 + (cb * c3 * c4 - sb * s3 * s4) * S6));
  e(6, 8, c27 * (-sb * (c3 * c5 * c6 * s4 + c4 * s3 * s5 * s6) + cb * (c4 * c5 * c6 * s3 - c3 * s4 * s5 * s6)) +
              s27 / kSqrt6 * (C6 * (-cb * c3 * c4 + sb * s3 * s4) * S5 + (c3 * c4 * sb + cb * s3 * s4) * S6));
  e(7, 8, c27 * (c3 * c4 * (c5 * c6 * sd - cd * s5 * s6) + s3 * s4 * (cd * c5 * c6 + sd * s5 * s6)) +
              s27 / kSqrt6 * (C6 * (c4 * sd * s3 + cd * c3 * s4) * S5 + (-cd * c4 * s3 + c3 * sd * s4) * S6));
  e(8, 8, c27 * (sd * (-c5 * c6 * s3 * s4 + c3 * c4 * s5 * s6) + cd * (c3 * c4 * c5 * c6 + s3 * s4 * s5 * s6)) +
              s27 / kSqrt6 * (C6 * (cd * c4 * s3 - c3 * sd * s4) * S5 + (c4 * sd * s3 + cd * c3 * s4) * S6));
  return m;
}

double su3_det_xi(const RealVector& gamma) {
  check_length(gamma, 8);
  const double g5 = gamma(4), g6 = gamma(5);
  return 0.25 * std::cos(2 * gamma(2)) * std::cos(kSqrt6 * g5) * std::cos(2 * gamma(6)) *
         (2 + std::cos(2 * (g5 - g6)) + std::cos(2 * (g5 + g6)));
}

double root_multiset_distance(const std::vector<Root>& a, const std::vector<Root>& b) {
  const double inf = std::numeric_limits<double>::infinity();
  if (a.size() != b.size()) return inf;
  std::vector<bool> used(b.size(), false);
  double worst = 0.0;
  for (const auto& r : a) {
    double best = inf;
    std::size_t best_j = b.size();
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (used[j] || b[j].multiplicity != r.multiplicity) continue;
      const double dist = std::abs(b[j].value - r.value);
      if (dist < best) {
        best = dist;
        best_j = j;
      }
    }
    if (best_j == b.size()) return inf;
    used[best_j] = true;
    worst = std::max(worst, best);
  }
  return worst;
}

Inputs Inputs::from_builtins() {
  return {compute_structure_tensor(builtin_basis("su2_pauli_half")),
          compute_structure_tensor(builtin_basis("su3_cartan")),
          tabulated_structure_tensor("su2_pauli_half"), tabulated_structure_tensor("su3_cartan")};
}

namespace {

constexpr double kExact = 0.0;
constexpr double kTight = 1e-12;
constexpr double kMatrix = 1e-10;
constexpr double kBeta = 1e-9;

void add(std::vector<Item>& out, std::string name, double err, double tol) {
  out.push_back({std::move(name), err, tol, std::isfinite(err) && err <= tol});
}

double max_abs(const RealMatrix& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

double tensor_distance(const StructureTensor& a, const StructureTensor& b) {
  if (a.dim() != b.dim()) return std::numeric_limits<double>::infinity();
  double d = 0.0;
  for (int i = 1; i <= a.dim(); ++i) d = std::max(d, max_abs(a.adjoint(i) - b.adjoint(i)));
  return d;
}

// Runs `f` and converts any library exception into an infinite error.
template <typename F>
double guarded(F&& f) {
  try {
    return f();
  } catch (const std::exception&) {
    return std::numeric_limits<double>::infinity();
  }
}

// Truncated exponential series; oracle for the closed form.
RealMatrix series_exp(const RealMatrix& m, double gamma) {
  RealMatrix sum = RealMatrix::Identity(m.rows(), m.cols());
  RealMatrix term = sum;
  for (int k = 1; k < 80; ++k) {
    term = term * (gamma * m) / static_cast<double>(k);
    sum += term;
    if (max_abs(term) < 1e-18) break;
  }
  return sum;
}

}  // namespace

std::vector<Item> run_suite(const Inputs& in) {
  std::vector<Item> out;
  const Tolerances& tol = default_tolerances();
  std::mt19937_64 rng(20240601);
  std::uniform_real_distribution<double> angle(-3.0, 3.0);
  const std::vector<double> fixed_gammas{-3.0, -1.0, -0.1, 0.1, 0.5, 1.0, 2.5, 3.0};

  // Structure constants: derived from the basis matrices vs the reference table.
  add(out, "structure-constants su2_pauli_half derived == table",
      tensor_distance(in.su2_derived.snapped(tol.snap), in.su2_tabulated), kExact);
  add(out, "structure-constants su3_cartan derived == table",
      tensor_distance(in.su3_derived.snapped(tol.snap), in.su3_tabulated), kExact);
  add(out, "jacobi su2_pauli_half derived", jacobi_residual(in.su2_derived), tol.structural);
  add(out, "jacobi su3_cartan derived", jacobi_residual(in.su3_derived), tol.structural);

  // su(3) adjoint spectra and beta coefficients, against the table.
  for (int i = 1; i <= 8; ++i) {
    const std::string tag = "su3 generator " + std::to_string(i);
    const RealMatrix& m = in.su3_tabulated.adjoint(i);
    add(out, "char-poly " + tag, guarded([&] {
          return max_abs(characteristic_polynomial(m, tol).monic - su3_char_poly(i));
        }),
        kExact);
    add(out, "eigenvalues " + tag, guarded([&] {
          return root_multiset_distance(spectrum(m, true, tol).roots, su3_eigenvalues(i));
        }),
        kBeta);
    add(out, "beta " + tag, guarded([&] {
          const Spectrum spec = spectrum(m, true, tol);
          double err = 0.0;
          for (double g : {0.1, 0.5, 1.0, 2.5}) {
            err = std::max(err, (beta_coefficients(spec, g, tol).beta - su3_beta(i, g))
                                    .cwiseAbs()
                                    .maxCoeff());
          }
          return err;
        }),
        kBeta);
  }

  // Closed-form exponentials vs the reference displays.
  auto exp_items = [&](const std::string& algebra, const StructureTensor& tensor, auto display) {
    for (int i = 1; i <= tensor.dim(); ++i) {
      const double err = guarded([&] {
        const AdjointTable t(tensor, tol);
        double e = 0.0;
        std::vector<double> gs;
        for (int r = 0; r < 20; ++r) gs.push_back(angle(rng));
        for (double g : gs) e = std::max(e, max_abs(t.exp(i, g) - display(i, g)));
        return e;
      });
      add(out, "exp-adjoint " + algebra + " generator " + std::to_string(i), err, kMatrix);
    }
  };
  exp_items("su2", in.su2_tabulated, su2_exp);
  exp_items("su3", in.su3_tabulated, su3_exp);

  // Closed form vs truncated series, for every tensor in play.
  auto series_item = [&](const std::string& name, const StructureTensor& tensor) {
    add(out, "exp-adjoint vs series " + name, guarded([&] {
          const AdjointTable t(tensor, tol);
          double e = 0.0;
          for (int i = 1; i <= tensor.dim(); ++i) {
            for (double g : fixed_gammas) {
              e = std::max(e, max_abs(t.exp(i, g) - series_exp(tensor.adjoint(i), g)));
            }
          }
          return e;
        }),
        kMatrix);
  };
  series_item("su2 derived", in.su2_derived);
  series_item("su2 table", in.su2_tabulated);
  series_item("su3 derived", in.su3_derived);
  series_item("su3 table", in.su3_tabulated);

  // Xi matrices and determinants.
  const ChartSequence can2 = ChartSequence::canonical(3);
  const ChartSequence zyz = ChartSequence::zyz();
  const ChartSequence can3 = ChartSequence::canonical(8);
  std::vector<RealVector> pts2, pts3;
  for (int r = 0; r < 50; ++r) {
    RealVector p2(3), p3(8);
    for (int k = 0; k < 3; ++k) p2(k) = angle(rng);
    for (int k = 0; k < 8; ++k) p3(k) = angle(rng);
    pts2.push_back(p2);
    pts3.push_back(p3);
  }

  auto xi_item = [&](const std::string& name, const StructureTensor& tensor,
                     const ChartSequence& chart, const std::vector<RealVector>& pts,
                     auto display, double tolerance) {
    add(out, name, guarded([&] {
          const AdjointTable t(tensor, tol);
          double e = 0.0;
          for (const auto& p : pts) e = std::max(e, max_abs(xi_matrix(t, chart, p).matrix - display(p)));
          return e;
        }),
        tolerance);
  };
  auto det_item = [&](const std::string& name, const StructureTensor& tensor,
                      const ChartSequence& chart, const std::vector<RealVector>& pts,
                      auto display, double tolerance) {
    add(out, name, guarded([&] {
          const AdjointTable t(tensor, tol);
          double e = 0.0;
          for (const auto& p : pts) e = std::max(e, std::abs(xi_matrix(t, chart, p).det - display(p)));
          return e;
        }),
        tolerance);
  };
  // Inverse displays are checked through the RHS solve (relative to the largest
  // entry), away from singular points.
  auto inverse_item = [&](const std::string& name, const StructureTensor& tensor,
                          const ChartSequence& chart, const std::vector<RealVector>& pts,
                          auto display, auto det_of) {
    add(out, name, guarded([&] {
          const AdjointTable t(tensor, tol);
          double e = 0.0;
          for (const auto& p : pts) {
            if (std::abs(det_of(p)) < 0.05) continue;
            const RealMatrix inv = display(p);
            for (int k = 0; k < 3; ++k) {
              const RealVector u = RealVector::Unit(3, k);
              const RealVector rhs = wei_norman_rhs(t, chart, p, u, tol.singularity);
              e = std::max(e, (rhs - inv * u).cwiseAbs().maxCoeff() / std::max(1.0, inv.cwiseAbs().maxCoeff()));
            }
          }
          return e;
        }),
        kTight);
  };

  auto det_can2 = [](const RealVector& p) { return std::cos(p(1)); };
  auto det_zyz = [](const RealVector& p) { return std::sin(p(1)); };

  xi_item("xi su2 canonical", in.su2_tabulated, can2, pts2, su2_xi_canonical, kTight);
  inverse_item("xi-inverse su2 canonical", in.su2_tabulated, can2, pts2, su2_xi_inverse_canonical,
               det_can2);
  det_item("det-xi su2 canonical", in.su2_tabulated, can2, pts2, det_can2, kTight);
  xi_item("xi su2 zyz", in.su2_tabulated, zyz, pts2, su2_xi_zyz, kTight);
  inverse_item("xi-inverse su2 zyz", in.su2_tabulated, zyz, pts2, su2_xi_inverse_zyz, det_zyz);
  det_item("det-xi su2 zyz", in.su2_tabulated, zyz, pts2, det_zyz, kTight);
  add(out, "zyz chart singular at origin", guarded([&] {
        return singular_at_origin(AdjointTable(in.su2_tabulated, tol), zyz, tol.singularity) ? 0.0
                                                                                               : 1.0;
      }),
      kExact);

  xi_item("xi su3 canonical", in.su3_tabulated, can3, pts3, su3_xi_canonical, kBeta);
  det_item("det-xi su3 canonical", in.su3_tabulated, can3, pts3, su3_det_xi, kBeta);
  return out;
}

}  // namespace wn::golden
