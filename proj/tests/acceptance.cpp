// Acceptance checks: one PASS/FAIL line per criterion, exit status 1 on any failure.

#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "support.hpp"

namespace {

using namespace jetline;
using namespace jetline::testing;

/// Collects the first few failures of a criterion.
class Check {
 public:
  void expect(bool cond, const std::string& what) {
    ++count_;
    if (cond) return;
    ++failed_;
    if (failed_ <= 3) detail_ += (detail_.empty() ? "" : "; ") + what;
  }
  bool ok() const { return failed_ == 0; }
  std::string summary() const {
    std::ostringstream os;
    os << count_ << " checks";
    if (failed_) os << ", " << failed_ << " failed: " << detail_;
    return os.str();
  }

 private:
  int count_ = 0;
  int failed_ = 0;
  std::string detail_;
};

const JetDerivationSpec kClassical = JetDerivationSpec::classical();

SplittingType left_type(int d, const Field& f, const JetDerivationSpec& s = kClassical) {
  return splitting_type(jet_bundle(d, Side::left, s, f));
}
SplittingType right_type(int d, const Field& f, const JetDerivationSpec& s = kClassical) {
  return splitting_type(jet_bundle(d, Side::right, s, f));
}

struct JetCase {
  Field field;
  int d;
};

std::vector<JetCase> classical_cases() {
  std::vector<JetCase> out;
  for (int d = 1; d <= 6; ++d) out.push_back({Field::rationals(), d});
  for (auto [p, d] : std::vector<std::pair<int, int>>{{2, 2}, {2, 4}, {3, 3}, {5, 5}, {3, 4}}) {
    out.push_back({Field::prime(p), d});
  }
  return out;
}

void criterion1(Check& c) {
  for (int d = 1; d <= 6; ++d) {
    const SplittingType r = right_type(d, Q()), l = left_type(d, Q());
    c.expect(r == SplittingType({d, d - 2}), "right d=" + std::to_string(d) + " gave " + r.to_string());
    c.expect(l == SplittingType({d - 1, d - 1}), "left d=" + std::to_string(d) + " gave " + l.to_string());
  }
}

void criterion2(Check& c) {
  for (auto [p, d] : std::vector<std::pair<int, int>>{{2, 2}, {2, 4}, {3, 3}, {5, 5}}) {
    const Field f = Field::prime(p);
    const SplittingType expected({d, d - 2});
    const std::string tag = "p=" + std::to_string(p) + " d=" + std::to_string(d);
    c.expect(left_type(d, f) == expected, "left " + tag + " gave " + left_type(d, f).to_string());
    c.expect(right_type(d, f) == expected, "right " + tag + " gave " + right_type(d, f).to_string());
  }
  const SplittingType l = left_type(4, Field::prime(3));
  c.expect(l == SplittingType({3, 3}), "left p=3 d=4 gave " + l.to_string());
}

void criterion3(Check& c) {
  for (const auto& jc : classical_cases()) {
    const CechClass cc = atiyah_class(TransitionBundle::line(jc.field, jc.d));
    const bool agree = left_type(jc.d, jc.field) == right_type(jc.d, jc.field);
    const auto p = jc.field.characteristic();
    const bool divides = p == 0 ? jc.d == 0 : jc.d % static_cast<int>(p) == 0;
    const std::string tag = jc.field.tag() + " d=" + std::to_string(jc.d);
    c.expect(cc.vanishes == agree, "vanishing vs splitting agreement at " + tag);
    c.expect(cc.vanishes == divides, "vanishing vs char | d at " + tag);
    if (cc.vanishes) {
      c.expect(verify_witness(TransitionBundle::line(jc.field, jc.d), coefficient_sheaf(kClassical, jc.field), cc),
               "witness at " + tag);
    }
  }
}

LaurentMatrix reference_matrix(int l, int i, const Field& f) {
  const LaurentPoly z = LaurentPoly::zero(f);
  auto m = [&](long c, int e) { return LaurentPoly::monomial(f, c, e); };
  return LaurentMatrix::from_rows({{m(-1, l - 2), z, m(-l, l - 1)}, {z, m(1, l), m(-l, i + l - 1)}, {z, z, m(1, l)}}, z);
}

void criterion4(Check& c) {
  for (int l = 0; l <= 4; ++l) {
    for (int i = 0; i <= 2; ++i) {
      const std::string tag = "l=" + std::to_string(l) + " i=" + std::to_string(i);
      const JetDerivationSpec spec = JetDerivationSpec::rank3(i);
      c.expect(structure_matrix(l, i, Q()) == reference_matrix(l, i, Q()), "structure matrix " + tag);
      const SplittingType r = right_type(l, Q(), spec);
      c.expect(r == SplittingType({l - 2, l, l}), "right " + tag + " gave " + r.to_string());

      const TransitionBundle left = jet_bundle(l, Side::left, spec, Q());
      const SplittingType by_h0 = splitting_type(left);
      const SplittingType by_h1 = splitting_type_from_h1(left);
      c.expect(by_h0 == by_h1, "left " + tag + ": " + by_h0.to_string() + " vs " + by_h1.to_string());
      const int r3 = static_cast<int>(left.rank());
      for (int n = -l - 3; n <= 2; ++n) {
        const int h0n = h0(left, n), h1n = h1(left, n);
        c.expect(h0n - h1n == degree(left) + r3 * (n + 1), "Riemann-Roch " + tag + " n=" + std::to_string(n));
        c.expect(h0n == h0_from_splitting(by_h0, n), "h0 from splitting " + tag + " n=" + std::to_string(n));
      }
    }
  }
}

void criterion5(Check& c) {
  Rng rng(501);
  for (int trial = 0; trial < 20; ++trial) {
    const auto a = random_known_bundle(Q(), rng, 2);
    const auto b = random_known_bundle(Q(), rng, 2);
    const K0Class sum = k0_class(direct_sum(a.bundle, b.bundle));
    c.expect(sum == k0_class(a.bundle) + k0_class(b.bundle), "additivity trial " + std::to_string(trial));
    c.expect(sum == K0Class{a.splitting.degree() + b.splitting.degree(),
                            static_cast<long>(a.splitting.rank() + b.splitting.rank())},
             "(degree, rank) trial " + std::to_string(trial));
  }
  const K0Class zero{0, 0};
  for (const auto& jc : classical_cases()) {
    c.expect(c_I_class(jet_bundle(jc.d, Side::left, kClassical, jc.field),
                       jet_bundle(jc.d, Side::right, kClassical, jc.field)) == zero,
             "classical c_I at " + jc.field.tag() + " d=" + std::to_string(jc.d));
  }
  for (int l = 0; l <= 4; ++l) {
    for (int i = 0; i <= 2; ++i) {
      const JetDerivationSpec spec = JetDerivationSpec::rank3(i);
      c.expect(c_I_class(jet_bundle(l, Side::left, spec, Q()), jet_bundle(l, Side::right, spec, Q())) == zero,
               "rank3 c_I at l=" + std::to_string(l) + " i=" + std::to_string(i));
    }
  }
}

void criterion6(Check& c) {
  for (const Field& f : both_fields()) {
    Rng rng(600 + f.characteristic());
    const std::string tag = " over " + f.tag();
    for (int trial = 0; trial < 100; ++trial) {
      const JetRing ring = random_ring(f, rng, trial % 2 == 0);
      const JetElement u = random_element(ring, rng), v = random_element(ring, rng), w = random_element(ring, rng);
      c.expect(ring.mul(ring.mul(u, v), w) == ring.mul(u, ring.mul(v, w)), "associativity" + tag);
      c.expect(ring.mul(u, v + w) == ring.mul(u, v) + ring.mul(u, w), "left distributivity" + tag);
      c.expect(ring.mul(u + v, w) == ring.mul(u, w) + ring.mul(v, w), "right distributivity" + tag);
      c.expect(ring.mul(ring.unit(), u) == u && ring.mul(u, ring.unit()) == u, "unit" + tag);

      const JetElement x{u.x, LaurentPoly::zero(f)}, y{v.x, LaurentPoly::zero(f)};
      c.expect(ring.mul(x, y) == ring.zero(), "I^2 = 0" + tag);

      const LaurentPoly a = u.a, b = v.a;
      c.expect(ring.s_map(a * b) == ring.mul(ring.s_map(a), ring.s_map(b)), "s multiplicative" + tag);
      c.expect(ring.s_map(a + b) == ring.s_map(a) + ring.s_map(b), "s additive" + tag);
      c.expect(ring.t_map(a * b) == ring.mul(ring.t_map(a), ring.t_map(b)), "t multiplicative" + tag);
      c.expect(ring.s_map(a) - ring.t_map(a) == ring.d_I(a), "s - t = d_I" + tag);

      c.expect(ring.d_pr(ring.mul(u, v)) ==
                   ring.bimodule().left_act(u.a, ring.d_pr(v)) + ring.bimodule().right_act(ring.d_pr(u), v.a),
               "d_Pr derivation" + tag);

      const JetModule m(ring, 1 + trial % 2);
      const JetModuleElement p = random_module_element(m, rng), q = random_module_element(m, rng);
      c.expect(m.left_act(u, m.left_act(v, p)) == m.left_act(ring.mul(u, v), p), "a1 associativity" + tag);
      c.expect(m.left_act(u, p + q) == m.left_act(u, p) + m.left_act(u, q), "a1 additivity" + tag);
      c.expect(m.left_act(ring.unit(), p) == p, "a1 unit" + tag);
      c.expect(m.right_act(m.right_act(p, u), v) == m.right_act(p, ring.mul(u, v)), "a2 associativity" + tag);
      c.expect(m.right_act(p + q, u) == m.right_act(p, u) + m.right_act(q, u), "a2 additivity" + tag);
      c.expect(m.right_act(p, ring.unit()) == p, "a2 unit" + tag);
      c.expect(m.right_act(m.left_act(u, p), v) == m.left_act(u, m.right_act(p, v)), "a1/a2 compatibility" + tag);

      const Vec e = random_vec(f, rng, m.e_rank(), 3);
      c.expect(m.diff_op_commutator(a, e * b) == m.right_scalar(m.diff_op_commutator(a, e), b),
               "[d_E,a] right B-linear" + tag);
      const JetModule ab(random_ring(f, rng, true), 2);
      const Vec e2 = random_vec(f, rng, 2, 3);
      c.expect(ab.diff_op_commutator(a, e2 * b) == ab.left_scalar(b, ab.diff_op_commutator(a, e2)),
               "[d_E,a] left B-linear (abelianized)" + tag);
      c.expect(ab.double_commutator(a, b, e2) == ab.zero(), "[[d_E,a],b] = 0" + tag);
    }
  }
}

void criterion7(Check& c) {
  int idempotents = 0;
  for (const Field& f : both_fields()) {
    for (std::size_t nvars = 1; nvars <= 3; ++nvars) {
      Rng rng(700 + nvars + f.characteristic());
      for (const Idempotent& p : sample_idempotents(f, nvars, rng)) {
        ++idempotents;
        const GrassmannConnection nabla = grassmann_connection(p);
        const DualBasis db = dual_basis(p);
        for (int trial = 0; trial < 100; ++trial) {
          const MultiPoly a = random_multipoly(f, nvars, rng, 3);
          const PolyVec e = p.apply(random_poly_vec(f, p.size(), nvars, rng));
          c.expect(nabla.leibniz_defect(a, e).is_zero(), "Leibniz over " + f.tag());
          c.expect(db.reproduce(e) == e, "reproducing identity over " + f.tag());
        }
      }
    }
  }
  c.expect(idempotents >= 5, "at least five idempotents");

  for (const Field& f : both_fields()) {
    Rng rng(750 + f.characteristic());
    for (int trial = 0; trial < 20; ++trial) {
      const JetModule m(random_ring(f, rng, trial % 2 == 0), 2);
      std::vector<Vec> values{random_vec(f, rng, m.tensor_rank(), 2), random_vec(f, rng, m.tensor_rank(), 2)};
      const Connection nabla(m, values);
      const TensorMap back = splitting_to_connection(m, connection_to_splitting(m, nabla.as_map()));
      for (const auto& probe : default_probes(m, 10, 99 + trial)) {
        c.expect(back(probe.e) == nabla(probe.e), "connection/splitting round trip over " + f.tag());
      }
    }
  }
}

void criterion8(Check& c) {
  Rng rng(801);
  for (int trial = 0; trial < 50; ++trial) {
    const auto kb = random_known_bundle(Q(), rng, 3, 3);
    const int r = static_cast<int>(kb.bundle.rank());
    c.expect(h0(kb.bundle, 0) - h1(kb.bundle, 0) == degree(kb.bundle) + r, "Riemann-Roch trial " + std::to_string(trial));
    for (int n = -3; n <= 3; ++n) c.expect(h0_report(kb.bundle, n).stable(), "h0 stabilization");
  }
  for (int trial = 0; trial < 50; ++trial) {
    const auto kb = random_known_bundle(Q(), rng, 3, 4);
    const std::size_t r = kb.bundle.rank();
    const TransitionBundle moved(random_unimodular(Q(), r, rng, false) * kb.bundle.transition() *
                                 random_unimodular(Q(), r, rng, true));
    const SplittingType before = splitting_type(kb.bundle), after = splitting_type(moved);
    c.expect(before == after && before == kb.splitting, "gauge invariance trial " + std::to_string(trial));
    for (int n = -5; n <= 5; ++n) c.expect(h0_report(moved, n).stable(), "h0 stabilization");
  }
  for (const auto& jc : classical_cases()) {
    for (Side side : {Side::left, Side::right}) {
      const TransitionBundle e = jet_bundle(jc.d, side, kClassical, jc.field);
      for (int n = -jc.d - 3; n <= 3; ++n) c.expect(h0_report(e, n).stable(), "h0 stabilization on jets");
    }
  }
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Check&)>>> criteria{
      {"classical jet splitting types over Q", criterion1},
      {"characteristic-p collapse", criterion2},
      {"Atiyah vanishing matches splitting agreement and char | d", criterion3},
      {"rank-3 structure matrices and splittings", criterion4},
      {"K0 additivity and c_I = 0", criterion5},
      {"jet ring and module property suites", criterion6},
      {"Grassmann connection suite", criterion7},
      {"cohomology oracles", criterion8},
  };
  bool all = true;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    Check c;
    std::string status;
    try {
      criteria[k].second(c);
      status = c.ok() ? "PASS" : "FAIL";
    } catch (const std::exception& e) {
      c.expect(false, std::string("exception: ") + e.what());
      status = "FAIL";
    }
    all = all && status == "PASS";
    std::cout << status << " criterion " << (k + 1) << ": " << criteria[k].first << " (" << c.summary() << ")\n";
  }
  return all ? 0 : 1;
}
