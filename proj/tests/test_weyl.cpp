#include <random>

#include "doctest.h"
#include "qpainleve/weyl.hpp"

using namespace qpainleve;
using C = Complex<double>;
using G = Generator;

namespace {

FieldPoint<double> fixed_point() {
  return FieldPoint<double>::constrained({0.31, 0.12}, {0.9, -0.35}, {1.1, 0.2}, {-0.6, 0.7}, {0.8, 0.45},
                                         {1.2, -0.3});
}

void check_all_pass(const std::vector<ResidualRecord>& records) {
  for (const auto& r : records) {
    INFO(r.equation << " residual " << r.residual << " " << r.reason);
    if (r.reason.rfind("WARN", 0) == 0) continue;
    CHECK(!r.skipped);
    CHECK(r.pass);
  }
}

}  // namespace

TEST_CASE("composition order is calibrated by T(x) = xq") {
  CHECK(calibrated_composition() == Composition::LeftmostFirst);
  const auto p = fixed_point();
  C right = apply_word(WeylWord::T(), p, Composition::RightmostFirst).x;
  CHECK(relative_residual(right, p.x / p.q) < 1e-14);
}

TEST_CASE("generator basics") {
  const auto p = fixed_point();
  CHECK(point_deviation(apply_generator(G::s0, apply_generator(G::s0, p)), p) < 1e-14);
  CHECK(point_deviation(apply_word(WeylWord::parse("pi pi pi pi pi pi"), p), p) < 1e-14);
  CHECK(point_deviation(apply_word(WeylWord{}, p), p) == 0.0);

  const auto i = apply_generator(G::iota, p);
  CHECK(i.f[1] == p.f[2]);
  CHECK(i.f[2] == p.f[1]);
  CHECK(i.f[0] == p.f[0]);
  CHECK(relative_residual(i.q, C(1.0) / p.q) < 1e-15);

  // Coordinates a generator does not mention are untouched.
  const auto s = apply_generator(G::s1, p);
  CHECK(s.x == p.x);
  CHECK(s.q == p.q);
  CHECK(s.f[1] == p.f[1]);
  const auto r = apply_generator(G::r0, p);
  CHECK(r.a == p.a);
  CHECK(r.q == p.q);
  CHECK(apply_generator(G::pi, p).q == p.q);
}

TEST_CASE("translation images match an independent evaluation") {
  const auto p = fixed_point();
  struct Ref {
    WeylWord word;
    C f[3];
  };
  const Ref refs[] = {
      {WeylWord::T(), {{0.40391425186962526, -0.0951157096793685}, {0.3982494753268098, 0.7457385871765898},
                       {0.0864764693606783, -0.045329253121926205}}},
      {WeylWord::T1(), {{1.2572647514192328, -0.3427421297092723}, {0.021603827754537938, -0.12646717928979906},
                        {0.5043427709380234, 1.7841001475709182}}},
      {WeylWord::T2(), {{0.72, 1.2475}, {-3.257568370582392, -1.4849467233378544},
                        {0.01642183990829328, 0.05782619725182192}}},
  };
  for (const auto& ref : refs) {
    const auto img = apply_word(ref.word, p);
    for (int j = 0; j < 3; ++j) CHECK(relative_residual(img.f[j], ref.f[j]) < 1e-13);
  }
}

TEST_CASE("words") {
  CHECK(WeylWord::parse("pi pi pi r0").letters() == WeylWord::T().letters());
  CHECK(WeylWord::parse("T1").str() == "pi pi s2 s0");
  CHECK(WeylWord::parse("T^-1").letters() == WeylWord::T().inverse().letters());
  CHECK(WeylWord::T().inverse().str() == "r0 pi^-1 pi^-1 pi^-1");
  CHECK(WeylWord::parse("").empty());
  CHECK_THROWS_AS(WeylWord::parse("pi s3"), DomainError);

  const auto p = fixed_point();
  for (const WeylWord& w : {WeylWord::T(), WeylWord::T1(), WeylWord::T2()}) {
    CHECK(point_deviation(apply_word(w * w.inverse(), p), p) < 1e-13);
    CHECK(point_deviation(apply_word(w.inverse() * w, p), p) < 1e-13);
  }
  // π⁻¹ = π⁵.
  CHECK(point_deviation(apply_word(WeylWord{G::pi_inv}, p), apply_word(WeylWord{G::pi}.power(5), p)) < 1e-14);
}

TEST_CASE("shift law on constrained points") {
  const auto p = fixed_point();
  CHECK(relative_residual(apply_word(WeylWord::T(), p).x, p.x * p.q) < 1e-13);
  CHECK(relative_residual(apply_word(WeylWord::T1(), p).a[1], p.a[1] * p.q) < 1e-13);
  CHECK(relative_residual(apply_word(WeylWord::T2(), p).a[2], p.a[2] * p.q) < 1e-13);
  check_all_pass(check_shift_law(p));
}

TEST_CASE("presentation, commutation and constraints at 50 random points") {
  std::mt19937_64 rng(2024);
  for (int i = 0; i < 50; ++i) {
    const auto p = random_constrained_point(rng);
    CHECK(p.constraint_residual() < 1e-15);
    auto rel = check_group_relations(p);
    CHECK(rel.size() == 18);
    check_all_pass(rel);
    const auto& printed = rel.back();
    CHECK(printed.skipped);
    CHECK(printed.reason.rfind("WARN", 0) == 0);
    CHECK(printed.residual > 1e-3);

    check_all_pass(check_translation_commutation(p));
    check_all_pass(check_shift_law(p));

    auto cons = check_constraint_preservation(p);
    check_all_pass(cons);
    int warns = 0;
    for (const auto& r : cons) {
      if (r.reason.rfind("WARN", 0) != 0) continue;
      ++warns;
      CHECK(r.residual > 1e-3);
    }
    CHECK(warns == 5);
  }
}

TEST_CASE("evolution identities against word images") {
  std::mt19937_64 rng(99);
  for (int i = 0; i < 50; ++i) {
    const auto images = word_images(random_constrained_point(rng));
    for (const auto& id : evolution_ids()) {
      auto rec = evolution_residual(id, images);
      INFO(id << " " << rec.residual << " " << rec.reason);
      CHECK(rec.pass);
    }
    auto printed = evolution_residual(std::string(kPrintedT1Forward), images);
    CHECK(printed.skipped);
    CHECK(printed.residual > 1e-6);
  }
  const auto images = word_images(fixed_point());
  CHECK_THROWS_AS(evolution_residual(std::string("t3.fwd"), images), DomainError);

  EvolutionImages<double> partial{fixed_point(), {}, {}, {}, {}, {}};
  auto rec = evolution_residual(std::string("Tf1"), partial);
  CHECK(rec.skipped);
  CHECK(!rec.failed());
}

TEST_CASE("singular actions are reported, not fabricated") {
  auto p = fixed_point();
  p.f[0] = -p.a[0];  // a₀ + f₀ = 0
  try {
    apply_generator(G::s0, p);
    FAIL("expected a singular action");
  } catch (const SingularActionError& e) {
    CHECK(e.generator() == "s0");
    CHECK(e.polynomial() == "a_j + f_j");
  }
  CHECK_THROWS_AS(apply_word(WeylWord::parse("s0 s0"), p), SingularActionError);
  auto rel = check_group_relations(p);
  CHECK(rel[0].skipped);
  CHECK(!rel[0].failed());
}

TEST_CASE("extended precision relations") {
  PrecisionScope scope(256);
  using M = Complex<Mp>;
  auto p = FieldPoint<Mp>::constrained(M(Mp("0.31"), Mp("0.12")), M(Mp("0.9"), Mp("-0.35")), M(Mp("1.1"), Mp("0.2")),
                                       M(Mp("-0.6"), Mp("0.7")), M(Mp("0.8"), Mp("0.45")), M(Mp("1.2"), Mp("-0.3")));
  CHECK(point_deviation(apply_word(WeylWord::parse("s0 s1 s0 s1 s0 s1"), p), p) < 1e-70);
  CHECK(point_deviation(apply_word(WeylWord::T() * WeylWord::T1(), p), apply_word(WeylWord::T1() * WeylWord::T(), p)) <
        1e-70);
  const auto images = word_images(p);
  for (const auto& id : evolution_ids()) CHECK(evolution_residual(id, images).residual < 1e-70);
}
