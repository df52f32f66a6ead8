#include <doctest.h>

#include "sl4branch/structure.hpp"

using namespace sl4branch;
using namespace sl4branch::structure;

namespace {

// generic element of the standard-form symplectic algebra: (A X; Y -A^t)
// with X, Y symmetric
Mat4 symplectic_element() {
  return Mat4::from_rows({{{1, 2, 5, 6},
                           {3, -4, 6, 7},
                           {8, 9, -1, -3},
                           {9, 2, -2, 4}}});
}

// generic element of the complex-linear algebra: (P Q; -Q P), tr P = 0
Mat4 complex_linear_element() {
  return Mat4::from_rows({{{1, 2, 3, 4},
                           {5, -1, 6, 7},
                           {-3, -4, 1, 2},
                           {-6, -7, 5, -1}}});
}

}  // namespace

TEST_CASE("defining forms square to minus the identity") {
  for (Mat4 q : {q1_form(), q2_form(), standard_symplectic_form()})
    CHECK(q * q == -Mat4::identity());
}

TEST_CASE("fixed subalgebra dimensions") {
  CHECK(fixed_subalgebra(InvolutionId::Sigma1).dim() == 10);
  CHECK(fixed_subalgebra(InvolutionId::Sigma2).dim() == 10);
  CHECK(fixed_subalgebra(InvolutionId::Sigma1p).dim() == 7);
  CHECK(fixed_subalgebra(InvolutionId::Sigma2p).dim() == 7);
  CHECK(fixed_subalgebra(InvolutionId::Theta).dim() == 6);
  CHECK(minus_one_eigenspace(InvolutionId::Theta).dim() == 9);
  CHECK(minus_one_eigenspace(InvolutionId::Sigma1).dim() == 5);
  CHECK(minus_one_eigenspace(InvolutionId::Sigma1p).dim() == 8);
}

TEST_CASE("fixed subalgebras match their block descriptions") {
  Mat4 w = q1_conjugator();
  Mat4 winv = w.transpose();

  // h1 is conjugate to the standard-form symplectic algebra (A X; Y -A^t)
  SubspaceBasis h1 = fixed_subalgebra(InvolutionId::Sigma1);
  CHECK(in_span(h1.basis, winv * symplectic_element() * w));

  // h1p is conjugate to the embedded complex-linear algebra (P Q; -Q P)
  SubspaceBasis h1p = fixed_subalgebra(InvolutionId::Sigma1p);
  CHECK(in_span(h1p.basis, winv * complex_linear_element() * w));
  Mat4 bad = complex_linear_element();
  bad.at(0, 0) = Gaussian(2);  // breaks the (P Q; -Q P) shape
  CHECK_FALSE(in_span(h1p.basis, winv * bad * w));

  // antisymmetric matrices
  SubspaceBasis k = fixed_subalgebra(InvolutionId::Theta);
  for (const Mat4& m : k.basis) CHECK(m.transpose() == -m);

  // every fixed algebra is closed under the bracket
  for (InvolutionId id : {InvolutionId::Sigma1, InvolutionId::Sigma2,
                          InvolutionId::Sigma1p, InvolutionId::Sigma2p,
                          InvolutionId::Theta}) {
    auto b = fixed_subalgebra(id).basis;
    CHECK(bracket_closed(b));
  }
}

TEST_CASE("theta-stable parabolic") {
  Parabolic q = theta_stable_parabolic();
  CHECK(q.l.dim() == 7);
  CHECK(q.u.dim() == 4);
  CHECK(q.ubar.dim() == 4);

  // q = l + u is a subalgebra with abelian nilradical
  for (const Mat4& x : q.u.basis)
    for (const Mat4& y : q.u.basis) CHECK(Mat4::bracket(x, y).is_zero());
  for (const Mat4& x : q.l.basis)
    for (const Mat4& y : q.u.basis)
      CHECK(in_span(q.u.basis, Mat4::bracket(x, y)));
  CHECK(bracket_closed(q.l.basis));

  // the three pieces exhaust sl(4)
  auto all = sum_spans(sum_spans(q.l.basis, q.u.basis), q.ubar.basis);
  CHECK(all.size() == 15);

  // torus weights of the nilradical
  auto ws = weight_spaces(q.u.basis);
  std::map<Weight, size_t> mults;
  for (const auto& [w, vecs] : ws) mults[w] = vecs.size();
  CHECK(mults == std::map<Weight, size_t>{
                     {{0, 2}, 1}, {{1, 1}, 2}, {{2, 0}, 1}});
  CHECK(top_exterior_weight(q.u.basis) == Weight{4, 4});
  CHECK(top_exterior_weight(q.ubar.basis) == Weight{-4, -4});
}

TEST_CASE("split functionals read the split Cartan directions") {
  Mat4 a0 = split_gen();
  CHECK(split_functional(1, a0) == Gaussian(1));
  CHECK(split_functional(2, a0) == Gaussian(-1));
  Mat4 t1 = torus_gen_1();
  CHECK(split_functional(1, t1).is_zero());
  CHECK(split_functional(2, t1).is_zero());
}

TEST_CASE("top exterior weight rejects non-stable input") {
  Mat4 e01;
  e01.at(0, 1) = Gaussian(1);
  // a single elementary matrix straddling the two torus blocks
  Mat4 e02;
  e02.at(0, 2) = Gaussian(1);
  CHECK_THROWS_AS(top_exterior_weight(std::vector<Mat4>{e02}), std::invalid_argument);
  (void)e01;
}

TEST_CASE("congruence signature on small forms") {
  using M = std::vector<std::vector<Rational>>;
  auto sig = [](M m) { return trace_form_signature(std::move(m)); };
  CHECK(sig({{Rational(2)}}) == std::pair<int, int>{1, 0});
  CHECK(sig({{Rational(1), Rational(0)}, {Rational(0), Rational(-3)}}) ==
        std::pair<int, int>{1, 1});
  // hyperbolic plane: zero diagonal, signature (1,1)
  CHECK(sig({{Rational(0), Rational(1)}, {Rational(1), Rational(0)}}) ==
        std::pair<int, int>{1, 1});
  // degenerate direction contributes nothing
  CHECK(sig({{Rational(0), Rational(0)}, {Rational(0), Rational(5)}}) ==
        std::pair<int, int>{1, 0});
  CHECK(sig({{Rational(0)}}) == std::pair<int, int>{0, 0});
}

TEST_CASE("structure report passes every clause") {
  VerificationReport rep = structure_report();
  for (const ClauseResult& c : rep.clauses) {
    INFO(c.name, ": expected ", c.expected, ", got ", c.actual);
    CHECK(c.pass);
  }
  CHECK(rep.pass());
  CHECK(rep.first_failure().empty());
}

TEST_CASE("pseudo-dual report passes every clause") {
  VerificationReport rep = pseudo_dual_report();
  for (const ClauseResult& c : rep.clauses) {
    INFO(c.name, ": expected ", c.expected, ", got ", c.actual);
    CHECK(c.pass);
  }
  CHECK(rep.pass());
}

TEST_CASE("intersections behind the structure report") {
  Parabolic q = theta_stable_parabolic();
  SubspaceBasis h1 = fixed_subalgebra(InvolutionId::Sigma1);
  SubspaceBasis s1 = minus_one_eigenspace(InvolutionId::Sigma1);

  auto u_cap_h1 = intersect_spans(q.u.basis, h1.basis);
  CHECK(u_cap_h1.size() == 3);

  auto u_cap_s1 = intersect_spans(q.u.basis, s1.basis);
  REQUIRE(u_cap_s1.size() == 1);
  CHECK(top_exterior_weight(u_cap_s1) == Weight{1, 1});

  // h1 splits u
  auto joined = sum_spans(u_cap_h1, u_cap_s1);
  CHECK(joined.size() == 4);
  CHECK(same_span(joined, q.u.basis));

  SubspaceBasis s1p = minus_one_eigenspace(InvolutionId::Sigma1p);
  auto u_cap_s1p = intersect_spans(q.u.basis, s1p.basis);
  CHECK(top_exterior_weight(u_cap_s1p) == Weight{2, 2});
}
