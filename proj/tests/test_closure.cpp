#include <doctest.h>

#include <unsupported/Eigen/MatrixFunctions>

#include "dbsim/closure.hpp"

using namespace dbsim;
using namespace dbsim::closure;

namespace {

struct TwoModeOps {
  HilbertLayout layout;
  Matrix a, b;
  Operator op_a, op_b, beamsplitter;

  explicit TwoModeOps(int dim_a, int dim_b)
      : layout({dim_a, dim_b}),
        a(ladder(dim_a)),
        b(ladder(dim_b)),
        op_a(embed(a, 1, layout)),
        op_b(embed(b, 2, layout)),
        beamsplitter{layout,
                     embed_many({{1, a.adjoint()}, {2, b}}, layout).matrix +
                         embed_many({{1, a}, {2, b.adjoint()}}, layout).matrix,
                     OperatorRole::Hamiltonian} {}
};

}  // namespace

TEST_SUITE_BEGIN("closure");

TEST_CASE("commutator identities from the photon-loss example") {
  TwoModeOps ops(8, 8);
  Matrix guard = guard_projector(ops.layout, 2);

  // [a†b + ab†, a] = -b
  Operator c1 = commutator(ops.beamsplitter, ops.op_a);
  CHECK((guard * (c1.matrix + ops.op_b.matrix) * guard).norm() < 1e-12);

  // [H, H] = 0
  CHECK(commutator(ops.beamsplitter, ops.beamsplitter).matrix.norm() < 1e-12);

  // [a†b + ab†, ab] = -b^2 - a^2
  Operator ab = embed_many({{1, ops.a}, {2, ops.b}}, ops.layout);
  Operator c2 = commutator(ops.beamsplitter, ab);
  Matrix expect = -embed((ops.b * ops.b).eval(), 2, ops.layout).matrix -
                  embed((ops.a * ops.a).eval(), 1, ops.layout).matrix;
  CHECK((guard * (c2.matrix - expect) * guard).norm() < 1e-12);
}

TEST_CASE("extended set of the beamsplitter closes on span{a, b}") {
  TwoModeOps ops(8, 8);
  ErrorSet hardware = make_error_set({ops.op_a, ops.op_b}, "{a,b}");
  auto ext = generate_extended_set(ops.beamsplitter, hardware);
  CHECK(ext.converged);
  CHECK(ext.set.span_dim() == 2);
  CHECK(span_residual(ext.set, ops.op_a) < 1e-10);
  CHECK(span_residual(ext.set, ops.op_b) < 1e-10);
}

TEST_CASE("extended set of the dispersive beamsplitter matches the worked example") {
  TwoModeOps ops(8, 8);
  Matrix sz = sigma_z_gf();
  // H = (g/2)(a†b + ab†) + (Delta + chi/2 sigma_z) a†a
  double g = 1.0, delta = 0.37, chi = 0.81;
  Matrix na = (ops.a.adjoint() * ops.a).eval();
  Operator h{ops.layout,
             0.5 * g * ops.beamsplitter.matrix + delta * embed(na, 1, ops.layout).matrix +
                 0.5 * chi * embed_many({{0, sz}, {1, na}}, ops.layout).matrix,
             OperatorRole::Hamiltonian};
  ErrorSet hardware = make_error_set(
      {ops.op_a, ops.op_b, embed(sz, 0, ops.layout)}, "{a,b,sz}", 2, true);
  auto ext = generate_extended_set(h, hardware);
  CHECK(ext.converged);
  CHECK(ext.set.span_dim() == 5);  // {a, b, sz, a sz, b sz}
  for (const Operator& expect :
       {embed_many({{0, sz}, {1, ops.a}}, ops.layout),
        embed_many({{0, sz}, {2, ops.b}}, ops.layout)})
    CHECK(span_residual(ext.set, expect) < 1e-8);
  // ab is outside the extended span
  CHECK(span_residual(ext.set, embed_many({{1, ops.a}, {2, ops.b}}, ops.layout)) > 0.9);
}

TEST_CASE("diagonal Hamiltonian with diagonal error is an immediate fixed point") {
  TwoModeOps ops(6, 6);
  Matrix na = (ops.a.adjoint() * ops.a).eval();
  Operator h{ops.layout, embed(na, 1, ops.layout).matrix, OperatorRole::Hamiltonian};
  Operator diag_err{ops.layout, embed((na * na).eval(), 1, ops.layout).matrix,
                    OperatorRole::Generic};
  ErrorSet hw = make_error_set({diag_err}, "{n^2}");
  auto ext = generate_extended_set(h, hw);
  CHECK(ext.converged);
  CHECK(ext.depth == 1);
  CHECK(ext.set.span_dim() == 1);
}

TEST_CASE("check_closure verdicts and witnesses") {
  TwoModeOps ops(8, 8);
  ErrorSet hardware = make_error_set({ops.op_a, ops.op_b}, "{a,b}");
  ErrorSet corr = correctable_photon_loss(ops.layout);

  SUBCASE("two-mode squeezing is not closed, witness ~ b†") {
    Operator h{ops.layout,
               embed_many({{1, ops.a.adjoint()}, {2, ops.b.adjoint()}}, ops.layout).matrix +
                   embed_many({{1, ops.a}, {2, ops.b}}, ops.layout).matrix,
               OperatorRole::Hamiltonian};
    auto verdict = check_closure(h, hardware, corr);
    CHECK_FALSE(verdict.closed);
    REQUIRE(verdict.witness.has_value());
    Matrix guard = guard_projector(ops.layout, 2);
    Matrix w = guard * verdict.witness->matrix * guard;
    Matrix bdag = guard * embed(ops.b.adjoint().eval(), 2, ops.layout).matrix * guard;
    double overlap = std::abs((bdag.adjoint() * w).trace()) / (bdag.norm() * w.norm());
    CHECK(overlap == doctest::Approx(1.0).epsilon(1e-9));
  }

  SUBCASE("drive a + a† is closed ([H, a] is a constant)") {
    Operator h{ops.layout, embed((ops.a + ops.a.adjoint()).eval(), 1, ops.layout).matrix,
               OperatorRole::Hamiltonian};
    CHECK(check_closure(h, hardware, corr).closed);
  }

  SUBCASE("a†a (b + b†) is not closed") {
    Matrix na = (ops.a.adjoint() * ops.a).eval();
    Operator h{ops.layout,
               embed_many({{1, na}, {2, (ops.b + ops.b.adjoint()).eval()}}, ops.layout).matrix,
               OperatorRole::Hamiltonian};
    CHECK_FALSE(check_closure(h, hardware, corr).closed);
  }
}

TEST_CASE("closure table reproduces all seven verdicts") {
  auto rows = closure_table();
  REQUIRE(rows.size() == 7);
  auto expect = [&](const std::string& name, bool closed) {
    for (const auto& r : rows)
      if (r.hamiltonian == name) {
        CHECK(r.closed == closed);
        // good candidates stay good when tensored with sigma_z
        if (closed) CHECK(r.closed_sigma_variant);
        return;
      }
    FAIL("row not found: " << name);
  };
  expect("a†a", true);
  expect("a + a†", true);
  expect("a b† + a†b", true);
  expect("a†b† + ab", false);
  expect("a†² + a²", false);
  expect("a†a (b + b†)", false);
  expect("(a + a†) b†b", false);

  auto md = closure_table_markdown(rows);
  CHECK(md.find("a†a") != std::string::npos);
  auto csv = closure_table_csv(rows);
  CHECK(csv.find("hamiltonian,closed") != std::string::npos);
}

TEST_CASE("BCH consistency: conjugated errors stay in the correctable span") {
  // closed rows, on layouts large enough that the guard absorbs truncation
  struct Case {
    std::string name;
    HilbertLayout layout;
    Matrix h_modes;
  };
  std::vector<Case> cases;
  {
    HilbertLayout small({10, 10});
    Matrix a = ladder(10), b = ladder(10);
    cases.push_back({"a†a", small, embed((a.adjoint() * a).eval(), 1, small).matrix});
    cases.push_back({"bs", small,
                     embed_many({{1, a.adjoint()}, {2, b}}, small).matrix +
                         embed_many({{1, a}, {2, b.adjoint()}}, small).matrix});
  }
  {
    HilbertLayout disp({24, 4});
    Matrix a = ladder(24);
    cases.push_back({"a + a†", disp, embed((a + a.adjoint()).eval(), 1, disp).matrix});
    // additivity case: sum of two closed rows
    cases.push_back({"a†a + (a + a†)", disp,
                     embed((a.adjoint() * a + a + a.adjoint()).eval(), 1, disp).matrix});
  }

  for (const auto& c : cases) {
    CAPTURE(c.name);
    // photon-conserving rows mix whole excitation sectors, so keep only
    // states whose sector is complete at this truncation: 2 kept <= d - 1
    int guard = c.layout.mode_dims[0] >= 20 ? 12 : 5;
    ErrorSet corr = correctable_photon_loss(c.layout, guard);
    Matrix ga = ladder(c.layout.mode_dims[0]);
    Matrix gb = ladder(c.layout.mode_dims[1]);
    double hnorm = c.h_modes.operatorNorm();
    for (double scale : {0.1, 1.0, 10.0}) {
      double t = scale / hnorm;
      Matrix u = Matrix((-kI * t) * c.h_modes).exp();
      for (const Matrix& eps :
           {embed(ga, 1, c.layout).matrix, embed(gb, 2, c.layout).matrix}) {
        Operator conj{c.layout, u * eps * u.adjoint(), OperatorRole::Generic};
        CHECK(span_residual(corr, conj) < 1e-7);
      }
    }
  }
}

TEST_CASE("additivity of closure on the closed table rows") {
  TwoModeOps ops(8, 8);
  ErrorSet hardware = make_error_set({ops.op_a, ops.op_b}, "{a,b}");
  ErrorSet corr = correctable_photon_loss(ops.layout);
  Matrix na = (ops.a.adjoint() * ops.a).eval();
  std::vector<Matrix> closed_rows = {
      embed(na, 1, ops.layout).matrix,
      embed((ops.a + ops.a.adjoint()).eval(), 1, ops.layout).matrix,
      ops.beamsplitter.matrix,
  };
  for (std::size_t i = 0; i < closed_rows.size(); ++i)
    for (std::size_t j = i; j < closed_rows.size(); ++j) {
      Operator sum{ops.layout, closed_rows[i] + closed_rows[j], OperatorRole::Hamiltonian};
      CHECK(check_closure(sum, hardware, corr).closed);
    }
}

TEST_CASE("non-convergence is reported at max depth") {
  TwoModeOps ops(8, 8);
  ErrorSet hardware = make_error_set({ops.op_a}, "{a}");
  // Kerr-like Hamiltonian keeps generating higher monomials
  Matrix na = (ops.a.adjoint() * ops.a).eval();
  Operator h{ops.layout, embed((na * na).eval(), 1, ops.layout).matrix,
             OperatorRole::Hamiltonian};
  ClosureOptions opts;
  opts.max_depth = 3;
  auto ext = generate_extended_set(h, hardware, opts);
  CHECK_FALSE(ext.converged);
  CHECK(ext.depth == 3);
}

TEST_SUITE_END();
