#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "sl4branch/linalg.hpp"
#include "sl4branch/report.hpp"
#include "sl4branch/weights.hpp"

namespace sl4branch {

/// Basis of a Lie subalgebra of sl(4), stored as exact matrices.  Real
/// bases keep rational entries; complexification is a flag, not a copy
/// (the span functions work over Q(i) either way).
struct SubspaceBasis {
  std::vector<Mat4> basis;
  bool real = true;

  size_t dim() const { return basis.size(); }
};

/// The five involutions of sl(4,R) used here.  Sigma1/Sigma1p act through
/// the block form diag(J, -J), Sigma2/Sigma2p through diag(J, J); theta is
/// the Cartan involution X -> -X^t.  The first form is conjugate to the
/// standard symplectic form (0 -I; I 0) by a rotation (verified in the
/// structure report), but only the diag(J, -J) realization meshes with the
/// parabolic defined by diag(J, J): it splits the nilradical's (1,1) weight
/// space between the fixed and anti-fixed parts, which is what the
/// branching computation needs.
enum class InvolutionId { Sigma1, Sigma2, Sigma1p, Sigma2p, Theta };

inline std::string involution_name(InvolutionId id) {
  switch (id) {
    case InvolutionId::Sigma1: return "sigma1";
    case InvolutionId::Sigma2: return "sigma2";
    case InvolutionId::Sigma1p: return "sigma1p";
    case InvolutionId::Sigma2p: return "sigma2p";
    case InvolutionId::Theta: return "theta";
  }
  return "?";
}

namespace structure {

/// Fixed ordered basis of sl(4): the twelve off-diagonal units, then the
/// three diagonal differences.
inline const std::vector<Mat4>& sl4_basis() {
  static const std::vector<Mat4> basis = [] {
    std::vector<Mat4> b;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) {
        if (i == j) continue;
        Mat4 m;
        m.at(i, j) = Gaussian(1);
        b.push_back(m);
      }
    for (int i = 0; i < 3; ++i) {
      Mat4 m;
      m.at(i, i) = Gaussian(1);
      m.at(i + 1, i + 1) = Gaussian(-1);
      b.push_back(m);
    }
    return b;
  }();
  return basis;
}

inline Mat4 q1_form() {
  return Mat4::from_rows({{{0, -1, 0, 0}, {1, 0, 0, 0}, {0, 0, 0, 1}, {0, 0, -1, 0}}});
}

inline Mat4 q2_form() {
  return Mat4::from_rows({{{0, -1, 0, 0}, {1, 0, 0, 0}, {0, 0, 0, -1}, {0, 0, 1, 0}}});
}

/// The standard symplectic form (0 -I; I 0), conjugate of q1_form.
inline Mat4 standard_symplectic_form() {
  return Mat4::from_rows({{{0, 0, -1, 0}, {0, 0, 0, -1}, {1, 0, 0, 0}, {0, 1, 0, 0}}});
}

/// Rotation in SO(4) conjugating q1_form into standard_symplectic_form.
inline Mat4 q1_conjugator() {
  return Mat4::from_rows({{{1, 0, 0, 0}, {0, 0, -1, 0}, {0, 1, 0, 0}, {0, 0, 0, 1}}});
}

/// Generators of the compact torus: 2x2 rotation generators in the two
/// diagonal blocks.  A weight x*e1 + y*e2 means ad eigenvalues (ix, iy)
/// on these generators.
inline Mat4 torus_gen_1() {
  return Mat4::from_rows({{{0, 1, 0, 0}, {-1, 0, 0, 0}, {0, 0, 0, 0}, {0, 0, 0, 0}}});
}

inline Mat4 torus_gen_2() {
  return Mat4::from_rows({{{0, 0, 0, 0}, {0, 0, 0, 0}, {0, 0, 0, 1}, {0, 0, -1, 0}}});
}

/// Generator of the split part of the fundamental Cartan; the split
/// functionals take values f1 = 1, f2 = -1 on it.
inline Mat4 split_gen() {
  Mat4 m;
  m.at(0, 0) = Gaussian(1);
  m.at(1, 1) = Gaussian(1);
  m.at(2, 2) = Gaussian(-1);
  m.at(3, 3) = Gaussian(-1);
  return m;
}

/// Split-Cartan functional f_j evaluated on a matrix: the mean of the
/// j-th 2x2 diagonal block's diagonal.
inline Gaussian split_functional(int j, const Mat4& m) {
  int o = j == 1 ? 0 : 2;
  return Gaussian(Rational(1, 2)) * (m.at(o, o) + m.at(o + 1, o + 1));
}

/// Differential of the involution on sl(4,R).  The forms square to -I, so
/// form^{-1} = -form and the conjugations below are exact.
inline Mat4 apply_involution(InvolutionId id, const Mat4& x) {
  switch (id) {
    case InvolutionId::Theta:
      return -x.transpose();
    case InvolutionId::Sigma1: {
      Mat4 q = q1_form();
      return q * x.transpose() * q;
    }
    case InvolutionId::Sigma1p: {
      Mat4 q = q1_form();
      return -(q * x * q);
    }
    case InvolutionId::Sigma2: {
      Mat4 q = q2_form();
      return q * x.transpose() * q;
    }
    case InvolutionId::Sigma2p: {
      Mat4 q = q2_form();
      return -(q * x * q);
    }
  }
  throw std::logic_error("apply_involution: bad id");
}

/// Eigenspace of a linear operator on sl(4) for a given eigenvalue,
/// computed as an exact kernel over Q(i).
inline std::vector<Mat4> operator_eigenspace(
    const std::function<Mat4(const Mat4&)>& op, const Gaussian& eigenvalue) {
  const std::vector<Mat4>& basis = sl4_basis();
  std::vector<Vec> cols;
  cols.reserve(basis.size());
  for (const Mat4& e : basis) cols.push_back(flatten(op(e) - eigenvalue * e));
  std::vector<Mat4> out;
  for (const Vec& coeff : DenseMat::from_columns(cols).kernel())
    out.push_back(unflatten(primitive_scale(flatten(combine(basis, coeff)))));
  return out;
}

}  // namespace structure

/// Basis of the +1 eigenspace of the involution's differential.  The
/// result has rational entries and is closed under the bracket.
inline SubspaceBasis fixed_subalgebra(InvolutionId id) {
  auto op = [id](const Mat4& x) { return structure::apply_involution(id, x); };
  return SubspaceBasis{structure::operator_eigenspace(op, Gaussian(1)), true};
}

/// Basis of the -1 eigenspace of the involution's differential.
inline SubspaceBasis minus_one_eigenspace(InvolutionId id) {
  auto op = [id](const Mat4& x) { return structure::apply_involution(id, x); };
  return SubspaceBasis{structure::operator_eigenspace(op, Gaussian(-1)), true};
}

struct Parabolic {
  SubspaceBasis l;     // centralizer of the defining elliptic element
  SubspaceBasis u;     // +2 eigenspace of ad(i * q2_form)
  SubspaceBasis ubar;  // -2 eigenspace
};

/// The theta-stable parabolic q = l + u of sl(4,C) defined by ad of
/// i times the equal-block symplectic element.  Dimensions (7, 4, 4).
inline Parabolic theta_stable_parabolic() {
  Mat4 q2 = structure::q2_form();
  auto ad = [&q2](const Mat4& x) { return Gaussian::i() * Mat4::bracket(q2, x); };
  Parabolic p;
  p.l = SubspaceBasis{structure::operator_eigenspace(ad, Gaussian(0)), true};
  p.u = SubspaceBasis{structure::operator_eigenspace(ad, Gaussian(2)), false};
  p.ubar = SubspaceBasis{structure::operator_eigenspace(ad, Gaussian(-2)), false};
  return p;
}

namespace structure {

/// Matrix of an operator restricted to a span, in that span's own
/// coordinates.  Throws if the span is not invariant.
inline DenseMat restricted_matrix(const std::vector<Mat4>& span,
                                  const std::function<Mat4(const Mat4&)>& op) {
  DenseMat m(span.size(), span.size());
  for (size_t k = 0; k < span.size(); ++k) {
    auto coords = coordinates_in(span, op(span[k]));
    if (!coords)
      throw std::invalid_argument("restricted_matrix: span not invariant");
    for (size_t i = 0; i < span.size(); ++i) m.at(i, k) = (*coords)[i];
  }
  return m;
}

}  // namespace structure

/// Decompose a torus-stable subspace into its compact-torus weight spaces.
/// Throws std::invalid_argument when the input is not torus-stable.
inline std::vector<std::pair<Weight, std::vector<Mat4>>> weight_spaces(
    const std::vector<Mat4>& span) {
  if (span.empty()) return {};
  Mat4 b1 = structure::torus_gen_1();
  Mat4 b2 = structure::torus_gen_2();
  DenseMat ad1 = structure::restricted_matrix(
      span, [&b1](const Mat4& x) { return Mat4::bracket(b1, x); });
  DenseMat ad2 = structure::restricted_matrix(
      span, [&b2](const Mat4& x) { return Mat4::bracket(b2, x); });
  size_t d = span.size();
  std::vector<std::pair<Weight, std::vector<Mat4>>> out;
  size_t found = 0;
  for (long long x = -6; x <= 6; ++x) {
    for (long long y = -6; y <= 6; ++y) {
      // weight (x, y) <=> ad eigenvalues (ix, iy)
      DenseMat stacked(2 * d, d);
      for (size_t i = 0; i < d; ++i)
        for (size_t j = 0; j < d; ++j) {
          stacked.at(i, j) = ad1.at(i, j);
          stacked.at(d + i, j) = ad2.at(i, j);
        }
      Gaussian ex = Gaussian::i() * Gaussian(x);
      Gaussian ey = Gaussian::i() * Gaussian(y);
      for (size_t i = 0; i < d; ++i) {
        stacked.at(i, i) -= ex;
        stacked.at(d + i, i) -= ey;
      }
      std::vector<Vec> ker = stacked.kernel();
      if (ker.empty()) continue;
      std::vector<Mat4> vecs;
      for (const Vec& c : ker)
        vecs.push_back(unflatten(primitive_scale(flatten(combine(span, c)))));
      found += vecs.size();
      out.push_back({Weight{x, y}, std::move(vecs)});
    }
  }
  if (found != d)
    throw std::invalid_argument(
        "weight_spaces: subspace is not a sum of integral weight spaces");
  return out;
}

/// Sum of the compact-torus weights of a torus-stable subspace -- the
/// weight of its top exterior power.
inline Weight top_exterior_weight(const std::vector<Mat4>& span) {
  Weight total{0, 0};
  for (const auto& [w, vecs] : weight_spaces(span)) {
    total.x += w.x * static_cast<long long>(vecs.size());
    total.y += w.y * static_cast<long long>(vecs.size());
  }
  return total;
}

inline Weight top_exterior_weight(const SubspaceBasis& s) {
  return top_exterior_weight(s.basis);
}

namespace structure {

/// Elements of a module span killed by every actor (the invariants of the
/// actors' adjoint action).
inline std::vector<Mat4> centralized_in(const std::vector<Mat4>& module_span,
                                        const std::vector<Mat4>& actors) {
  if (module_span.empty()) return {};
  size_t d = module_span.size();
  DenseMat stacked(actors.size() * d, d);
  for (size_t a = 0; a < actors.size(); ++a) {
    DenseMat ad = restricted_matrix(module_span, [&](const Mat4& x) {
      return Mat4::bracket(actors[a], x);
    });
    // brackets must land back in the span for this to make sense
    for (size_t i = 0; i < d; ++i)
      for (size_t j = 0; j < d; ++j) stacked.at(a * d + i, j) = ad.at(i, j);
  }
  std::vector<Mat4> out;
  for (const Vec& c : stacked.kernel())
    out.push_back(unflatten(primitive_scale(flatten(combine(module_span, c)))));
  return out;
}

inline std::vector<Mat4> bracket_span(const std::vector<Mat4>& a,
                                      const std::vector<Mat4>& b) {
  std::vector<Mat4> prods;
  for (const Mat4& x : a)
    for (const Mat4& y : b) {
      Mat4 z = Mat4::bracket(x, y);
      if (!z.is_zero()) prods.push_back(z);
    }
  return reduce_span(prods);
}

inline bool bracket_closed(const std::vector<Mat4>& span) {
  for (size_t i = 0; i < span.size(); ++i)
    for (size_t j = i + 1; j < span.size(); ++j)
      if (!in_span(span, Mat4::bracket(span[i], span[j]))) return false;
  return true;
}

/// Signature (positives, negatives) of the symmetric rational matrix g by
/// exact congruence diagonalization.
inline std::pair<int, int> trace_form_signature(
    std::vector<std::vector<Rational>> g) {
  size_t n = g.size();
  int pos = 0, neg = 0;
  for (size_t k = 0; k < n; ++k) {
    // ensure a nonzero diagonal pivot at (k, k), if the trailing block is nonzero
    if (g[k][k].is_zero()) {
      size_t swap_row = k;
      for (size_t i = k + 1; i < n; ++i)
        if (!g[i][i].is_zero()) {
          swap_row = i;
          break;
        }
      if (swap_row != k) {
        std::swap(g[k], g[swap_row]);
        for (size_t i = 0; i < n; ++i) std::swap(g[i][k], g[i][swap_row]);
      } else {
        size_t oi = 0, oj = 0;
        bool found = false;
        for (size_t i = k; i < n && !found; ++i)
          for (size_t j = i + 1; j < n && !found; ++j)
            if (!g[i][j].is_zero()) {
              oi = i;
              oj = j;
              found = true;
            }
        if (!found) break;  // trailing block vanishes
        for (size_t t = 0; t < n; ++t) g[oi][t] += g[oj][t];
        for (size_t t = 0; t < n; ++t) g[t][oi] += g[t][oj];
        if (oi != k) {
          std::swap(g[k], g[oi]);
          for (size_t i = 0; i < n; ++i) std::swap(g[i][k], g[i][oi]);
        }
      }
    }
    if (g[k][k].is_zero()) continue;
    if (g[k][k].sign() > 0)
      ++pos;
    else
      ++neg;
    for (size_t i = k + 1; i < n; ++i) {
      if (g[i][k].is_zero()) continue;
      Rational f = g[i][k] / g[k][k];
      for (size_t j = 0; j < n; ++j) g[i][j] -= f * g[k][j];
      for (size_t j = 0; j < n; ++j) g[j][i] -= f * g[j][k];
    }
  }
  return {pos, neg};
}

/// Multiset of integer eigenvalues of an operator restricted to a span
/// (used for the split-Cartan action, whose eigenvalues are tiny).
inline std::map<long long, size_t> integer_eigenvalues(
    const std::vector<Mat4>& span, const std::function<Mat4(const Mat4&)>& op) {
  size_t d = span.size();
  DenseMat m = restricted_matrix(span, op);
  std::map<long long, size_t> out;
  size_t found = 0;
  for (long long c = -6; c <= 6; ++c) {
    DenseMat shifted = m;
    for (size_t i = 0; i < d; ++i) shifted.at(i, i) -= Gaussian(c);
    size_t k = shifted.kernel().size();
    if (k > 0) {
      out[c] = k;
      found += k;
    }
  }
  if (found != d)
    throw std::invalid_argument("integer_eigenvalues: non-integral spectrum");
  return out;
}

}  // namespace structure

namespace detail {

inline std::string weight_multiset_str(
    const std::vector<std::pair<Weight, std::vector<Mat4>>>& ws) {
  std::vector<std::pair<Weight, size_t>> items;
  for (const auto& [w, v] : ws) items.push_back({w, v.size()});
  std::sort(items.begin(), items.end());
  std::string s = "{";
  for (size_t i = 0; i < items.size(); ++i) {
    if (i) s += ", ";
    s += items[i].first.str() + "x" + std::to_string(items[i].second);
  }
  return s + "}";
}

}  // namespace detail

/// All structural facts about the parabolic against the symplectic
/// subalgebra, verified by exact computation: the fine structure that the
/// branching laws rest on.
inline VerificationReport structure_report() {
  using namespace structure;
  VerificationReport rep{"structure", {}};
  auto clause = [&rep](const std::string& name, bool pass,
                       const std::string& expected, const std::string& actual) {
    rep.clauses.push_back({name, pass, expected, actual});
  };
  auto clause_dim = [&clause](const std::string& name, size_t actual,
                              size_t expected) {
    clause(name, actual == expected, std::to_string(expected),
           std::to_string(actual));
  };

  const std::vector<Mat4>& g = sl4_basis();

  // Involutions square to the identity and commute with theta.
  {
    bool sq = true, comm = true;
    for (InvolutionId id : {InvolutionId::Sigma1, InvolutionId::Sigma2,
                            InvolutionId::Sigma1p, InvolutionId::Sigma2p,
                            InvolutionId::Theta}) {
      for (const Mat4& e : g) {
        if (apply_involution(id, apply_involution(id, e)) != e) sq = false;
        Mat4 a = apply_involution(id, apply_involution(InvolutionId::Theta, e));
        Mat4 b = apply_involution(InvolutionId::Theta, apply_involution(id, e));
        if (a != b) comm = false;
      }
    }
    clause("involutions-square-to-identity", sq, "identity on all basis matrices",
           sq ? "identity" : "mismatch");
    clause("involutions-commute-with-theta", comm, "commuting", comm ? "commuting" : "mismatch");
  }

  // The rotation carrying the block form diag(J, -J) to the standard
  // symplectic form, and with it the fixed subalgebra to the familiar
  // block shape (A X; Y -A^t).
  {
    Mat4 w = q1_conjugator();
    Mat4 winv = w.transpose();  // orthogonal
    bool orth = (w * winv) == Mat4::identity();
    bool conj = (w * q1_form() * winv) == standard_symplectic_form();
    clause("conjugator-is-rotation", orth, "W W^t = 1", orth ? "ok" : "not orthogonal");
    clause("conjugator-carries-form", conj, "W Q1 W^-1 = standard form",
           conj ? "ok" : "mismatch");

    std::vector<Mat4> conj_h1;
    for (const Mat4& m : fixed_subalgebra(InvolutionId::Sigma1).basis)
      conj_h1.push_back(w * m * winv);
    Mat4 s = standard_symplectic_form();
    auto std_fixed = operator_eigenspace(
        [&s](const Mat4& x) { return s * x.transpose() * s; }, Gaussian(1));
    bool carried = same_span(conj_h1, std_fixed);
    clause("conjugator-carries-subalgebra", carried,
           "W h1 W^-1 = standard-form symplectic algebra",
           carried ? "equal" : "different");
  }

  SubspaceBasis h1 = fixed_subalgebra(InvolutionId::Sigma1);
  SubspaceBasis h2 = fixed_subalgebra(InvolutionId::Sigma2);
  SubspaceBasis h1p = fixed_subalgebra(InvolutionId::Sigma1p);
  SubspaceBasis h2p = fixed_subalgebra(InvolutionId::Sigma2p);
  SubspaceBasis k = fixed_subalgebra(InvolutionId::Theta);
  SubspaceBasis s1 = minus_one_eigenspace(InvolutionId::Sigma1);
  SubspaceBasis s1p = minus_one_eigenspace(InvolutionId::Sigma1p);

  clause_dim("dim-h1", h1.dim(), 10);
  clause_dim("dim-h2", h2.dim(), 10);
  clause_dim("dim-h1p", h1p.dim(), 7);
  clause_dim("dim-h2p", h2p.dim(), 7);
  clause_dim("dim-k", k.dim(), 6);

  {
    bool closed = true;
    for (const SubspaceBasis* s : {&h1, &h2, &h1p, &h2p, &k})
      if (!bracket_closed(s->basis)) closed = false;
    clause("fixed-subalgebras-bracket-closed", closed, "closed",
           closed ? "closed" : "not closed");
  }

  Parabolic q = theta_stable_parabolic();
  clause_dim("dim-levi", q.l.dim(), 7);
  clause_dim("dim-nilradical", q.u.dim(), 4);
  clause_dim("dim-opposite-nilradical", q.ubar.dim(), 4);

  {
    bool ab = true;
    for (const Mat4& x : q.u.basis)
      for (const Mat4& y : q.u.basis)
        if (!Mat4::bracket(x, y).is_zero()) ab = false;
    clause("nilradical-abelian", ab, "[u,u] = 0", ab ? "0" : "nonzero");

    // second route: the +4 eigenspace of the defining ad is empty
    Mat4 q2 = q2_form();
    auto ad = [&q2](const Mat4& x) { return Gaussian::i() * Mat4::bracket(q2, x); };
    size_t four = operator_eigenspace(ad, Gaussian(4)).size();
    clause_dim("ad-eigenvalue-4-space", four, 0);

    bool ideal = true;
    for (const Mat4& x : q.l.basis)
      for (const Mat4& y : q.u.basis)
        if (!in_span(q.u.basis, Mat4::bracket(x, y))) ideal = false;
    clause("nilradical-is-levi-stable", ideal, "[l,u] in u", ideal ? "ok" : "violated");
  }

  {
    auto ws = weight_spaces(q.u.basis);
    std::string got = detail::weight_multiset_str(ws);
    clause("nilradical-torus-weights", got == "{(0,2)x1, (1,1)x2, (2,0)x1}",
           "{(0,2)x1, (1,1)x2, (2,0)x1}", got);
    Weight total = top_exterior_weight(q.u.basis);
    clause("nilradical-weight-sum", total == Weight{4, 4}, "(4,4)", total.str());
  }

  {
    // full Cartan root data of the nilradical: split-part eigenvalues are
    // +-2 on the two (1,1) vectors and 0 on the others
    Mat4 a0 = split_gen();
    auto ws = weight_spaces(q.u.basis);
    std::map<std::string, size_t> triples;
    for (const auto& [w, vecs] : ws) {
      auto eig = integer_eigenvalues(
          vecs, [&a0](const Mat4& x) { return Mat4::bracket(a0, x); });
      for (const auto& [c, mult] : eig)
        triples[w.str() + "@" + std::to_string(c)] += mult;
    }
    std::string got;
    for (const auto& [key, mult] : triples)
      got += key + "x" + std::to_string(mult) + " ";
    std::string expect = "(0,2)@0x1 (1,1)@-2x1 (1,1)@2x1 (2,0)@0x1 ";
    clause("nilradical-split-weights", got == expect, expect, got);
  }

  std::vector<Mat4> u_cap_h1 = intersect_spans(q.u.basis, h1.basis);
  clause_dim("dim-u-cap-h1", u_cap_h1.size(), 3);

  std::vector<Mat4> u_cap_k = intersect_spans(q.u.basis, k.basis);
  std::vector<Mat4> u_cap_k_cap_h1 = intersect_spans(u_cap_k, h1.basis);
  clause_dim("dim-u-cap-k", u_cap_k.size(), 1);
  clause_dim("dim-u-cap-k-cap-h1", u_cap_k_cap_h1.size(), 1);
  clause("u-cap-k-inside-h1",
         !u_cap_k.empty() && same_span(u_cap_k, u_cap_k_cap_h1),
         "u cap k = u cap k cap h1", "compared");

  std::vector<Mat4> l_cap_h1 = intersect_spans(q.l.basis, h1.basis);
  clause_dim("dim-l-cap-h1", l_cap_h1.size(), 4);
  {
    std::vector<Mat4> center = centralized_in(l_cap_h1, l_cap_h1);
    std::vector<Mat4> derived = bracket_span(l_cap_h1, l_cap_h1);
    clause_dim("dim-l-cap-h1-center", center.size(), 1);
    clause_dim("dim-l-cap-h1-derived", derived.size(), 3);
    bool compact_center =
        !center.empty() && in_span(k.basis, center.front());
    clause("l-cap-h1-center-compact", compact_center, "center inside k",
           compact_center ? "ok" : "violated");

    // real points: the split real form sl(2,R) has trace-form signature (2,1)
    std::vector<Mat4> l_real = h2p.basis;  // centralizer of the defining element
    std::vector<Mat4> lh1_real = intersect_spans(l_real, h1.basis);
    clause_dim("dim-l-cap-h1-real", lh1_real.size(), 4);
    std::vector<Mat4> der_real = bracket_span(lh1_real, lh1_real);
    clause_dim("dim-l-cap-h1-derived-real", der_real.size(), 3);
    std::vector<std::vector<Rational>> gram(
        der_real.size(), std::vector<Rational>(der_real.size()));
    for (size_t i = 0; i < der_real.size(); ++i)
      for (size_t j = 0; j < der_real.size(); ++j) {
        Gaussian t = (der_real[i] * der_real[j]).trace();
        gram[i][j] = t.re();  // real basis, so the trace form is rational
      }
    auto [pos, neg] = trace_form_signature(gram);
    clause("l-cap-h1-derived-split-form", pos == 2 && neg == 1, "(2,1)",
           "(" + std::to_string(pos) + "," + std::to_string(neg) + ")");
  }

  {
    std::vector<Mat4> u_cap_s1 = intersect_spans(q.u.basis, s1.basis);
    clause_dim("dim-u-cap-s1", u_cap_s1.size(), 1);
    Weight w = top_exterior_weight(u_cap_s1);
    clause("u-cap-s1-weight", w == Weight{1, 1}, "(1,1)", w.str());
  }

  {
    std::vector<Mat4> u_cap_s1p = intersect_spans(q.u.basis, s1p.basis);
    clause_dim("dim-u-cap-s1p", u_cap_s1p.size(), 2);
    auto ws = weight_spaces(u_cap_s1p);
    std::string got = detail::weight_multiset_str(ws);
    clause("u-cap-s1p-weights", got == "{(0,2)x1, (2,0)x1}", "{(0,2)x1, (2,0)x1}", got);
    Weight total = top_exterior_weight(u_cap_s1p);
    clause("u-cap-s1p-weight-sum", total == Weight{2, 2}, "(2,2)", total.str());
  }

  {
    // Inside sl(4) the traceless part of l cap s1 is the 3-dimensional
    // adjoint piece; the trivial companion is the scalar line, which the
    // centralizer picks up once the ambient algebra is all 4x4 matrices
    // (the scalar is anti-fixed: sigma1 sends 1 to -1).
    std::vector<Mat4> l_cap_s1_traceless = intersect_spans(q.l.basis, s1.basis);
    clause_dim("dim-l-cap-s1-traceless", l_cap_s1_traceless.size(), 3);

    std::vector<Mat4> l_gl = q.l.basis;
    l_gl.push_back(Mat4::identity());
    std::vector<Mat4> s1_gl = s1.basis;
    s1_gl.push_back(Mat4::identity());
    std::vector<Mat4> l_cap_s1 = intersect_spans(l_gl, s1_gl);
    clause_dim("dim-l-cap-s1", l_cap_s1.size(), 4);

    std::vector<Mat4> trivial = centralized_in(l_cap_s1, l_cap_h1);
    std::vector<Mat4> moved = bracket_span(l_cap_h1, l_cap_s1);
    bool invariant = true;
    for (const Mat4& m : moved)
      if (!in_span(l_cap_s1, m)) invariant = false;
    std::vector<Mat4> together = sum_spans(trivial, moved);
    bool split = trivial.size() == 1 && moved.size() == 3 && invariant &&
                 together.size() == 4;
    clause("l-cap-s1-invariant-split", split, "dims {1, 3}, direct",
           "{" + std::to_string(trivial.size()) + ", " +
               std::to_string(moved.size()) + "}" +
               (invariant ? "" : ", not invariant"));
  }

  return rep;
}

namespace structure {

/// Index of the degree <= 2 monomial basis of the enveloping algebra:
/// slot 0 is the unit, slots 1..15 the generators, then the 120 products
/// e_i e_j with i <= j.
inline size_t pair_slot(size_t i, size_t j) {
  return 16 + i * 15 - i * (i - 1) / 2 + (j - i);
}

/// Coordinates of the enveloping-algebra product x * y (both degree one)
/// in the monomial basis: the symmetrized part plus half the bracket.
inline Vec enveloping_product(const Vec& xc, const Vec& yc, const Mat4& x,
                              const Mat4& y) {
  Vec out(136);
  for (size_t a = 0; a < 15; ++a) {
    if (xc[a].is_zero()) continue;
    for (size_t b = 0; b < 15; ++b) {
      if (yc[b].is_zero()) continue;
      size_t i = std::min(a, b), j = std::max(a, b);
      out[pair_slot(i, j)] += xc[a] * yc[b];
    }
  }
  Mat4 br = Mat4::bracket(x, y);
  auto bc = coordinates_in(sl4_basis(), br);
  Gaussian half(Rational(1, 2));
  for (size_t a = 0; a < 15; ++a) out[1 + a] = half * (*bc)[a];
  return out;
}

/// Check that ordered products from S(p') S(p) U(k) span the degree <= 2
/// part of the enveloping algebra (an exact rank-136 computation).
inline bool pbw_degree2_spans(const std::vector<Mat4>& p_prime,
                              const std::vector<Mat4>& p_h,
                              const std::vector<Mat4>& k_basis) {
  std::vector<const std::vector<Mat4>*> parts = {&p_prime, &p_h, &k_basis};
  std::vector<Vec> rows;
  Vec unit(136);
  unit[0] = Gaussian(1);
  rows.push_back(unit);
  std::vector<std::vector<Vec>> coords(3);
  for (size_t t = 0; t < 3; ++t)
    for (const Mat4& m : *parts[t]) {
      Vec c = *coordinates_in(sl4_basis(), m);
      Vec row(136);
      for (size_t a = 0; a < 15; ++a) row[1 + a] = c[a];
      rows.push_back(row);
      coords[t].push_back(std::move(c));
    }
  // degree-2 products, factors ordered p' before p before k
  for (size_t t1 = 0; t1 < 3; ++t1)
    for (size_t t2 = t1; t2 < 3; ++t2)
      for (size_t i = 0; i < parts[t1]->size(); ++i) {
        size_t j0 = (t1 == t2) ? i : 0;
        for (size_t j = j0; j < parts[t2]->size(); ++j)
          rows.push_back(enveloping_product(coords[t1][i], coords[t2][j],
                                            (*parts[t1])[i], (*parts[t2])[j]));
      }
  DenseMat m = DenseMat::from_rows(rows);
  return m.rows() == 136 && m.rank() == 136;
}

}  // namespace structure

/// The pseudo-dual-pair facts: the two fixed subgroups of an involution
/// and its theta-twist share a maximal compact, split the symmetric part
/// of the Cartan decomposition between them, and their symmetric algebras
/// triangularly factor the enveloping algebra (checked through degree 2).
inline VerificationReport pseudo_dual_report() {
  using namespace structure;
  VerificationReport rep{"pseudo-dual", {}};
  auto clause = [&rep](const std::string& name, bool pass,
                       const std::string& expected, const std::string& actual) {
    rep.clauses.push_back({name, pass, expected, actual});
  };

  SubspaceBasis k = fixed_subalgebra(InvolutionId::Theta);
  SubspaceBasis p = minus_one_eigenspace(InvolutionId::Theta);
  clause("dim-p", p.dim() == 9, "9", std::to_string(p.dim()));

  struct Pair {
    const char* tag;
    InvolutionId tau;
    InvolutionId tau_prime;
  };
  for (const Pair& pr : {Pair{"h1", InvolutionId::Sigma1, InvolutionId::Sigma1p},
                         Pair{"h2", InvolutionId::Sigma2, InvolutionId::Sigma2p}}) {
    std::string tag = pr.tag;
    std::string tagp = tag + "p";
    SubspaceBasis h = fixed_subalgebra(pr.tau);
    SubspaceBasis hp = fixed_subalgebra(pr.tau_prime);

    std::vector<Mat4> kh = intersect_spans(k.basis, h.basis);
    std::vector<Mat4> khp = intersect_spans(k.basis, hp.basis);
    clause("dim-k-cap-" + tag, kh.size() == 4, "4", std::to_string(kh.size()));
    clause("dim-k-cap-" + tagp, khp.size() == 4, "4", std::to_string(khp.size()));
    bool same = same_span(kh, khp);
    clause("k-cap-" + tag + "-equals-k-cap-" + tagp, same, "equal subspaces",
           same ? "equal" : "different");

    std::vector<Mat4> ph = intersect_spans(p.basis, h.basis);
    std::vector<Mat4> php = intersect_spans(p.basis, hp.basis);
    clause("dim-p-cap-" + tag, ph.size() == 6, "6", std::to_string(ph.size()));
    clause("dim-p-cap-" + tagp, php.size() == 3, "3", std::to_string(php.size()));
    std::vector<Mat4> meet = intersect_spans(ph, php);
    std::vector<Mat4> join = sum_spans(ph, php);
    bool direct = meet.empty() && join.size() == 9 && same_span(join, p.basis);
    clause("p-splits-across-" + tag + "-pair", direct, "p = (p cap h) + (p cap h')",
           direct ? "direct sum" : "not direct");

    bool spans = pbw_degree2_spans(php, ph, k.basis);
    clause("enveloping-degree2-factorization-" + tag, spans,
           "S(p') S(p) U(k) spans degree <= 2", spans ? "spans" : "gap");
  }

  // the maximal compacts of the second pair agree with K cap L
  {
    Parabolic q = theta_stable_parabolic();
    SubspaceBasis h2 = fixed_subalgebra(InvolutionId::Sigma2);
    std::vector<Mat4> kh2 = intersect_spans(k.basis, h2.basis);
    std::vector<Mat4> kl = intersect_spans(k.basis, q.l.basis);
    bool same = same_span(kh2, kl);
    clause("k-cap-h2-equals-k-cap-levi", same, "equal subspaces",
           same ? "equal" : "different");
  }

  return rep;
}

}  // namespace sl4branch
