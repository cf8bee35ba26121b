#include "qpainleve/weyl.hpp"

#include <algorithm>
#include <sstream>

#include "qpainleve/sampling.hpp"

namespace qpainleve {

namespace {

template <class R>
using Cx = Complex<R>;

// A denominator counts as vanishing when it is below a few ulps of the
// magnitudes that were summed to form it.
template <class R>
void guard(const Cx<R>& den, double scale, Generator g, const char* poly) {
  if (magnitude(den) <= 64.0 * std::numeric_limits<double>::epsilon() * std::max(scale, 1e-300) ||
      (den.re() == 0 && den.im() == 0)) {
    throw SingularActionError(std::string(generator_name(g)), poly);
  }
}

template <class R>
double mags(std::initializer_list<Cx<R>> terms) {
  double s = 0.0;
  for (const auto& t : terms) s += magnitude(t);
  return s;
}

template <class R>
FieldPoint<R> apply_s(int j, Generator g, const FieldPoint<R>& p) {
  const int j1 = (j + 1) % 3, j2 = (j + 2) % 3;
  const Cx<R>& aj = p.a[j];
  const Cx<R>& fj = p.f[j];
  const Cx<R> one(R(1));
  const Cx<R> plus = one + aj * fj;
  const Cx<R> sum = aj + fj;
  guard<R>(plus, mags<R>({one, aj * fj}), g, "1 + a_j f_j");
  guard<R>(sum, mags<R>({aj, fj}), g, "a_j + f_j");
  guard<R>(aj, 1.0, g, "a_j");
  FieldPoint<R> out = p;
  out.a[j] = one / aj;
  out.a[j1] = aj * p.a[j1];
  out.a[j2] = aj * p.a[j2];
  out.f[j1] = p.f[j1] * sum / plus;
  out.f[j2] = p.f[j2] * plus / sum;
  return out;
}

template <class R>
FieldPoint<R> apply_r0(const FieldPoint<R>& p) {
  guard<R>(p.x, 1.0, Generator::r0, "x");
  FieldPoint<R> out = p;
  out.x = p.q * p.q / p.x;
  for (int j = 0; j < 3; ++j) {
    const int j1 = (j + 1) % 3, j2 = (j + 2) % 3;
    const auto &a = p.a, &f = p.f;
    Cx<R> num = a[j] * a[j2] + a[j2] * f[j] + f[j] * f[j2];
    Cx<R> den = a[j] * a[j1] + a[j] * f[j1] + f[j] * f[j1];
    guard<R>(den, mags<R>({a[j] * a[j1], a[j] * f[j1], f[j] * f[j1]}), Generator::r0,
             "a_j a_{j+1} + a_j f_{j+1} + f_j f_{j+1}");
    guard<R>(f[j2], 1.0, Generator::r0, "f_{j+2}");
    out.f[j] = a[j] * a[j1] / f[j2] * num / den;
  }
  return out;
}

template <class R>
FieldPoint<R> apply_r1(const FieldPoint<R>& p) {
  guard<R>(p.x, 1.0, Generator::r1, "x");
  const Cx<R> one(R(1));
  FieldPoint<R> out = p;
  out.x = one / p.x;
  for (int j = 0; j < 3; ++j) {
    const int j1 = (j + 1) % 3, j2 = (j + 2) % 3;
    const auto &a = p.a, &f = p.f;
    Cx<R> num = one + a[j] * f[j] + a[j] * a[j1] * f[j] * f[j1];
    Cx<R> den = one + a[j2] * f[j2] + a[j] * a[j2] * f[j] * f[j2];
    guard<R>(den, mags<R>({one, a[j2] * f[j2], a[j] * a[j2] * f[j] * f[j2]}), Generator::r1,
             "1 + a_{j+2} f_{j+2} + a_j a_{j+2} f_j f_{j+2}");
    Cx<R> lead = a[j] * a[j1] * f[j1];
    guard<R>(lead, 1.0, Generator::r1, "a_j a_{j+1} f_{j+1}");
    out.f[j] = num / (lead * den);
  }
  return out;
}

template <class R>
FieldPoint<R> apply_iota(const FieldPoint<R>& p, IotaVariant variant) {
  guard<R>(p.q, 1.0, Generator::iota, "q");
  const Cx<R> one(R(1));
  FieldPoint<R> out = p;
  out.q = one / p.q;
  out.x = variant == IotaVariant::Canonical ? p.x / p.q : p.x * p.q;
  for (int j = 0; j < 3; ++j) {
    guard<R>(p.a[(2 * j) % 3], 1.0, Generator::iota, "a_{2j}");
    out.a[j] = one / p.a[(2 * j) % 3];
    out.f[j] = p.f[(2 * j) % 3];
  }
  return out;
}

template <class R>
FieldPoint<R> apply_pi(const FieldPoint<R>& p, int step, Generator g) {
  guard<R>(p.x, 1.0, g, "x");
  const Cx<R> one(R(1));
  FieldPoint<R> out = p;
  out.x = p.q / p.x;
  for (int j = 0; j < 3; ++j) {
    const int src = (j + step + 3) % 3;
    guard<R>(p.f[src], 1.0, g, "f_j");
    out.a[j] = p.a[src];
    out.f[j] = one / p.f[src];
  }
  return out;
}

Generator inverse_letter(Generator g) {
  if (g == Generator::pi) return Generator::pi_inv;
  if (g == Generator::pi_inv) return Generator::pi;
  return g;
}

ResidualRecord relation_record(const std::string& name, const WeylWord& lhs, const WeylWord& rhs,
                               const FieldPoint<double>& p, double tol, IotaVariant iota) {
  try {
    double dev = point_deviation(apply_word(lhs, p, iota), apply_word(rhs, p, iota));
    return make_record("weyl", name, {}, dev, tol);
  } catch (const SingularActionError& e) {
    return skip_record("weyl", name, {}, tol, e.what());
  }
}

}  // namespace

template <class R>
FieldPoint<R> FieldPoint<R>::constrained(Complex<R> q, Complex<R> x, Complex<R> a1, Complex<R> a2,
                                         Complex<R> f1, Complex<R> f2) {
  FieldPoint p;
  p.a = {q / (a1 * a2), a1, a2};
  p.f = {x * x * q / (f1 * f2), f1, f2};
  p.q = std::move(q);
  p.x = std::move(x);
  return p;
}

template <class R>
double FieldPoint<R>::constraint_residual(int q_exponent) const {
  return std::max(relative_residual(a[0] * a[1] * a[2], q),
                  relative_residual(f[0] * f[1] * f[2], x * x * ipow(q, q_exponent)));
}

template <class R>
double point_deviation(const FieldPoint<R>& lhs, const FieldPoint<R>& rhs) {
  const auto l = lhs.coordinates();
  const auto r = rhs.coordinates();
  double worst = 0.0;
  for (std::size_t i = 0; i < l.size(); ++i) worst = std::max(worst, relative_residual(l[i], r[i]));
  return worst;
}

FieldPoint<double> random_constrained_point(std::mt19937_64& rng) {
  Complex<double> q = random_polar(rng, 0.2, 0.8);
  Complex<double> x = random_polar(rng, 0.5, 1.5);
  Complex<double> a1 = random_polar(rng, 0.5, 1.5);
  Complex<double> a2 = random_polar(rng, 0.5, 1.5);
  Complex<double> f1 = random_polar(rng, 0.5, 1.5);
  Complex<double> f2 = random_polar(rng, 0.5, 1.5);
  return FieldPoint<double>::constrained(q, x, a1, a2, f1, f2);
}

std::string_view generator_name(Generator g) {
  switch (g) {
    case Generator::s0: return "s0";
    case Generator::s1: return "s1";
    case Generator::s2: return "s2";
    case Generator::r0: return "r0";
    case Generator::r1: return "r1";
    case Generator::iota: return "iota";
    case Generator::pi: return "pi";
    case Generator::pi_inv: return "pi^-1";
  }
  return "?";
}

WeylWord WeylWord::parse(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::vector<Generator> letters;
  std::string tok;
  while (in >> tok) {
    bool inverted = false;
    if (tok.size() > 3 && tok.compare(tok.size() - 3, 3, "^-1") == 0) {
      inverted = true;
      tok.resize(tok.size() - 3);
    }
    WeylWord piece;
    if (tok == "s0") piece = {Generator::s0};
    else if (tok == "s1") piece = {Generator::s1};
    else if (tok == "s2") piece = {Generator::s2};
    else if (tok == "r0") piece = {Generator::r0};
    else if (tok == "r1") piece = {Generator::r1};
    else if (tok == "iota") piece = {Generator::iota};
    else if (tok == "pi") piece = {Generator::pi};
    else if (tok == "pi_inv") piece = {Generator::pi_inv};
    else if (tok == "T") piece = T();
    else if (tok == "T1") piece = T1();
    else if (tok == "T2") piece = T2();
    else throw DomainError("unknown Weyl letter '" + tok + "'");
    if (inverted) piece = piece.inverse();
    letters.insert(letters.end(), piece.letters_.begin(), piece.letters_.end());
  }
  return WeylWord(std::move(letters));
}

WeylWord WeylWord::inverse() const {
  std::vector<Generator> out(letters_.rbegin(), letters_.rend());
  std::transform(out.begin(), out.end(), out.begin(), inverse_letter);
  return WeylWord(std::move(out));
}

WeylWord WeylWord::power(int e) const {
  WeylWord base = e < 0 ? inverse() : *this;
  WeylWord out;
  for (int i = 0; i < std::abs(e); ++i) out = out * base;
  return out;
}

WeylWord operator*(const WeylWord& lhs, const WeylWord& rhs) {
  std::vector<Generator> out = lhs.letters_;
  out.insert(out.end(), rhs.letters_.begin(), rhs.letters_.end());
  return WeylWord(std::move(out));
}

std::string WeylWord::str() const {
  std::string out;
  for (Generator g : letters_) {
    if (!out.empty()) out += ' ';
    out += generator_name(g);
  }
  return out;
}

template <class R>
FieldPoint<R> apply_generator(Generator g, const FieldPoint<R>& p, IotaVariant iota) {
  switch (g) {
    case Generator::s0: return apply_s(0, g, p);
    case Generator::s1: return apply_s(1, g, p);
    case Generator::s2: return apply_s(2, g, p);
    case Generator::r0: return apply_r0(p);
    case Generator::r1: return apply_r1(p);
    case Generator::iota: return apply_iota(p, iota);
    case Generator::pi: return apply_pi(p, 1, g);
    case Generator::pi_inv: return apply_pi(p, -1, g);
  }
  throw DomainError("unknown generator");
}

template <class R>
FieldPoint<R> apply_word(const WeylWord& w, const FieldPoint<R>& p, Composition order, IotaVariant iota) {
  const auto& letters = w.letters();
  const std::size_t n = letters.size();
  FieldPoint<R> cur = p;
  for (std::size_t step = 0; step < n; ++step) {
    const std::size_t idx = order == Composition::LeftmostFirst ? step : n - 1 - step;
    try {
      cur = apply_generator(letters[idx], cur, iota);
    } catch (const SingularActionError& e) {
      throw SingularActionError(std::string(generator_name(letters[idx])) + " (letter " + std::to_string(idx) +
                                    " of '" + w.str() + "')",
                                e.polynomial());
    }
  }
  return cur;
}

Composition calibrated_composition() {
  static const Composition order = [] {
    const auto p = FieldPoint<double>::constrained({0.31, 0.12}, {0.9, -0.35}, {1.1, 0.2}, {-0.6, 0.7},
                                                   {0.8, 0.45}, {1.2, -0.3});
    auto hits = [&](Composition c) {
      return relative_residual(apply_word(WeylWord::T(), p, c).x, p.x * p.q) < 1e-12;
    };
    const bool left = hits(Composition::LeftmostFirst);
    const bool right = hits(Composition::RightmostFirst);
    if (left == right) throw Error("Weyl composition calibration is ambiguous: T(x) = xq under neither or both orders");
    return left ? Composition::LeftmostFirst : Composition::RightmostFirst;
  }();
  return order;
}

template <class R>
FieldPoint<R> apply_word(const WeylWord& w, const FieldPoint<R>& p, IotaVariant iota) {
  return apply_word(w, p, calibrated_composition(), iota);
}

std::vector<ResidualRecord> check_group_relations(const FieldPoint<double>& p, double tol) {
  using G = Generator;
  const WeylWord id;
  const WeylWord s[3] = {{G::s0}, {G::s1}, {G::s2}};
  const WeylWord r[2] = {{G::r0}, {G::r1}};
  const WeylWord iota{G::iota};
  const WeylWord pi{G::pi};
  const auto C = IotaVariant::Canonical;

  std::vector<ResidualRecord> out;
  for (int j = 0; j < 3; ++j) out.push_back(relation_record("s" + std::to_string(j) + "^2", s[j] * s[j], id, p, tol, C));
  for (int j = 0; j < 3; ++j) {
    const int k = (j + 1) % 3;
    out.push_back(relation_record("(s" + std::to_string(j) + " s" + std::to_string(k) + ")^3",
                                  (s[j] * s[k]).power(3), id, p, tol, C));
  }
  for (int k = 0; k < 2; ++k) out.push_back(relation_record("r" + std::to_string(k) + "^2", r[k] * r[k], id, p, tol, C));
  out.push_back(relation_record("iota^2", iota * iota, id, p, tol, C));
  out.push_back(relation_record("pi^6", pi.power(6), id, p, tol, C));
  out.push_back(relation_record("pi pi^-1", pi * pi.inverse(), id, p, tol, C));
  for (int j = 0; j < 3; ++j) {
    const int k = (j + 1) % 3;
    out.push_back(relation_record("pi s" + std::to_string(j) + " = s" + std::to_string(k) + " pi", pi * s[j],
                                  s[k] * pi, p, tol, C));
  }
  for (int k = 0; k < 2; ++k) {
    const int l = (k + 1) % 2;
    out.push_back(relation_record("r" + std::to_string(k) + " pi = pi r" + std::to_string(l), r[k] * pi, pi * r[l], p,
                                  tol, C));
  }
  out.push_back(relation_record("r0 iota = iota r1", r[0] * iota, iota * r[1], p, tol, C));

  ResidualRecord printed = relation_record("r0 iota = iota r1 [printed iota]", r[0] * iota, iota * r[1], p, tol,
                                           IotaVariant::Printed);
  if (!printed.skipped) {
    printed = warn_record("weyl", printed.equation, {}, printed.residual, tol,
                          "iota(x) = xq as printed breaks this relation in the x coordinate");
  }
  out.push_back(printed);
  return out;
}

std::vector<ResidualRecord> check_translation_commutation(const FieldPoint<double>& p, double tol) {
  const WeylWord words[3] = {WeylWord::T(), WeylWord::T1(), WeylWord::T2()};
  const char* names[3] = {"T", "T1", "T2"};
  std::vector<ResidualRecord> out;
  for (int i = 0; i < 3; ++i) {
    for (int j = i + 1; j < 3; ++j) {
      const std::string name = std::string(names[i]) + " " + names[j] + " = " + names[j] + " " + names[i];
      out.push_back(relation_record(name, words[i] * words[j], words[j] * words[i], p, tol, IotaVariant::Canonical));
    }
  }
  return out;
}

std::vector<ResidualRecord> check_shift_law(const FieldPoint<double>& p, double tol) {
  struct Case {
    const char* name;
    WeylWord word;
    int slot;  // 0: x, 1: a1, 2: a2
  };
  const Case cases[] = {{"shift T", WeylWord::T(), 0}, {"shift T1", WeylWord::T1(), 1}, {"shift T2", WeylWord::T2(), 2}};
  std::vector<ResidualRecord> out;
  for (const Case& c : cases) {
    try {
      const FieldPoint<double> img = apply_word(c.word, p);
      Complex<double> expect[3] = {p.x, p.a[1], p.a[2]};
      expect[c.slot] *= p.q;
      const Complex<double> got[3] = {img.x, img.a[1], img.a[2]};
      double dev = relative_residual(img.q, p.q);
      for (int i = 0; i < 3; ++i) dev = std::max(dev, relative_residual(got[i], expect[i]));
      out.push_back(make_record("weyl", c.name, {}, dev, tol));
    } catch (const SingularActionError& e) {
      out.push_back(skip_record("weyl", c.name, {}, tol, e.what()));
    }
  }
  return out;
}

std::vector<ResidualRecord> check_constraint_preservation(const FieldPoint<double>& p, double tol) {
  using G = Generator;
  struct Case {
    G g;
    IotaVariant iota;
    int exponent;
    const char* suffix;
  };
  const Case cases[] = {
      {G::s0, IotaVariant::Canonical, 1, ""},     {G::s1, IotaVariant::Canonical, 1, ""},
      {G::s2, IotaVariant::Canonical, 1, ""},     {G::r0, IotaVariant::Canonical, -3, ""},
      {G::r1, IotaVariant::Canonical, -3, ""},    {G::pi, IotaVariant::Canonical, -3, ""},
      {G::pi_inv, IotaVariant::Canonical, -3, ""}, {G::iota, IotaVariant::Canonical, -3, ""},
      {G::iota, IotaVariant::Printed, 1, " [printed iota]"},
  };
  std::vector<ResidualRecord> out;
  std::vector<ResidualRecord> literal;
  for (const Case& c : cases) {
    const std::string name = "constraint " + std::string(generator_name(c.g)) + c.suffix;
    try {
      const FieldPoint<double> img = apply_generator(c.g, p, c.iota);
      out.push_back(make_record("weyl", name, {}, img.constraint_residual(c.exponent), tol));
      if (c.exponent != 1 && c.iota == IotaVariant::Canonical) {
        literal.push_back(warn_record("weyl", name + " [kept surface]", {}, img.constraint_residual(1), tol,
                                      "x-inverting generators move f0 f1 f2 = x^2 q to f0 f1 f2 = x^2 q^-3"));
      }
    } catch (const SingularActionError& e) {
      out.push_back(skip_record("weyl", name, {}, tol, e.what()));
    }
  }
  const std::pair<const char*, WeylWord> words[] = {
      {"T", WeylWord::T()},   {"T1", WeylWord::T1()},   {"T2", WeylWord::T2()},
      {"T^-1", WeylWord::T().inverse()}, {"T1^-1", WeylWord::T1().inverse()}, {"T2^-1", WeylWord::T2().inverse()},
  };
  for (const auto& [label, w] : words) {
    const std::string name = std::string("constraint ") + label;
    try {
      out.push_back(make_record("weyl", name, {}, apply_word(w, p).constraint_residual(), tol));
    } catch (const SingularActionError& e) {
      out.push_back(skip_record("weyl", name, {}, tol, e.what()));
    }
  }
  out.insert(out.end(), literal.begin(), literal.end());
  return out;
}

template <class R>
EvolutionImages<R> word_images(const FieldPoint<R>& p) {
  auto image = [&](const WeylWord& w) -> std::optional<FieldPoint<R>> {
    try {
      return apply_word(w, p);
    } catch (const SingularActionError&) {
      return std::nullopt;
    }
  };
  EvolutionImages<R> out{p, {}, {}, {}, {}, {}};
  out.T = image(WeylWord::T());
  out.T1 = image(WeylWord::T1());
  out.T1_inv = image(WeylWord::T1().inverse());
  out.T2 = image(WeylWord::T2());
  out.T2_inv = image(WeylWord::T2().inverse());
  return out;
}

const std::vector<std::string>& evolution_ids() {
  static const std::vector<std::string> ids{"tx.j0", "tx.j1", "tx.j2", "t1.fwd", "t1.inv", "t2.fwd", "t2.inv",
                                            "Tf1",   "Tf2",   "t1f1",  "t1f2",   "t2f1",   "t2f2"};
  return ids;
}

template <class R>
ResidualRecord evolution_residual(const std::string& id, const EvolutionImages<R>& images, const std::string& suite,
                                  const RecordParams& params, double tol) {
  const FieldPoint<R>& p = images.base;
  const Cx<R> one(R(1));
  const Cx<R>&q = p.q, &x = p.x, &a1 = p.a[1], &a2 = p.a[2], &f1 = p.f[1], &f2 = p.f[2];
  const Cx<R> xxqq = x * x * q * q;
  const Cx<R> A = a1 * a2, F = f1 * f2;

  const auto& ids = evolution_ids();
  if (id != kPrintedT1Forward && std::find(ids.begin(), ids.end(), id) == ids.end()) {
    throw DomainError("unknown evolution id '" + id + "'");
  }
  auto need = [](const std::optional<FieldPoint<R>>& img) { return img ? &*img : nullptr; };

  const FieldPoint<R>* img = nullptr;
  const char* which = "";
  Cx<R> lhs, num, den;
  try {
    if (id.rfind("tx.j", 0) == 0) {
      const int j = id[4] - '0';
      const int j1 = (j + 1) % 3, j2 = (j + 2) % 3;
      const auto &a = p.a, &f = p.f;
      img = need(images.T); which = "T";
      if (img) {
        lhs = img->f[j];
        num = a[j] * a[j1] * f[j1] * (one + a[j2] * f[j2] + a[j2] * a[j] * f[j2] * f[j]);
        den = one + a[j] * f[j] + a[j] * a[j1] * f[j] * f[j1];
      }
    } else if (id == "t1.fwd" || id == kPrintedT1Forward) {
      img = need(images.T1); which = "T1";
      if (img) {
        lhs = img->f[2] / f1;
        num = one + a1 * f1 + a1 * a1 * a2 * f2 + A * F;
        // The printed denominator has a₁f₁ where a₁f₂ belongs.
        den = A + a1 * (id == "t1.fwd" ? f2 : f1) + a1 * a1 * a2 * f1 + F;
      }
    } else if (id == "t1.inv" || id == "t1f1") {
      img = need(images.T1_inv); which = "T1^-1";
      if (img) {
        lhs = img->f[1] * q / f2;
        num = xxqq + A * F;
        den = x * x * A + F;
      }
    } else if (id == "t2.fwd") {
      img = need(images.T2); which = "T2";
      if (img) {
        lhs = img->f[1] / f2;
        num = a1 * a2 * a2 + f1 + A * f2 + a2 * F;
        den = a2 + A * f1 + f2 + a1 * a2 * a2 * F;
      }
    } else if (id == "t2.inv" || id == "t2f2") {
      img = need(images.T2_inv); which = "T2^-1";
      if (img) {
        lhs = img->f[2] / (f1 * q);
        num = A * x * x + F;
        den = xxqq + A * F;
      }
    } else if (id == "Tf1") {
      img = need(images.T); which = "T";
      if (img) {
        lhs = f1 * img->f[1];
        num = A * F + a1 * xxqq * f1 + xxqq;
        den = A * F + a1 * f1 + one;
      }
    } else if (id == "Tf2") {
      img = need(images.T); which = "T";
      if (img) {
        lhs = f2 * img->f[2] / xxqq;
        num = A * F + a1 * f1 + one;
        den = A * F + a1 * f1 + xxqq;
      }
    } else if (id == "t1f2") {
      img = need(images.T1_inv); which = "T1^-1";
      if (img) {
        lhs = F * img->f[2] / (x * x);
        num = a1 * a1 * a2 * f1 * f2 * f2 + q * q * F + a1 * xxqq * f2 + A * xxqq;
        den = A * f1 * f2 * f2 + a1 * F + xxqq * f2 + a1 * a1 * a2 * x * x;
      }
    } else if (id == "t2f1") {
      img = need(images.T2_inv); which = "T2^-1";
      if (img) {
        lhs = F * img->f[1] / (x * x);
        num = q * q * f1 * F + a1 * a2 * a2 * F + A * xxqq * f1 + a2 * xxqq;
        den = a2 * f1 * F + A * F + a1 * a2 * a2 * x * x * f1 + xxqq;
      }
    }
    if (!img) return skip_record(suite, id, params, tol, std::string("image under ") + which + " unavailable");
    if (den.re() == 0 && den.im() == 0) return skip_record(suite, id, params, tol, "denominator vanishes");
  } catch (const DomainError& e) {
    // A coordinate of the base point or image is zero.
    return skip_record(suite, id, params, tol, e.what());
  }
  const Cx<R> rhs = num / den;
  const double scale = std::max({magnitude(lhs), magnitude(rhs), 1.0});
  const double residual = magnitude(lhs - rhs) / scale;
  if (id == kPrintedT1Forward) {
    return warn_record(suite, id, params, residual, tol,
                       "printed (t1) denominator a1a2+a1f1+a1^2a2f1+f1f2; a1f2 in place of a1f1 holds");
  }
  return make_record(suite, id, params, residual, tol);
}

#define QPAINLEVE_INSTANTIATE(R)                                                                        \
  template struct FieldPoint<R>;                                                                        \
  template double point_deviation(const FieldPoint<R>&, const FieldPoint<R>&);                          \
  template FieldPoint<R> apply_generator(Generator, const FieldPoint<R>&, IotaVariant);                 \
  template FieldPoint<R> apply_word(const WeylWord&, const FieldPoint<R>&, IotaVariant);                \
  template FieldPoint<R> apply_word(const WeylWord&, const FieldPoint<R>&, Composition, IotaVariant);   \
  template EvolutionImages<R> word_images(const FieldPoint<R>&);                                        \
  template ResidualRecord evolution_residual(const std::string&, const EvolutionImages<R>&,             \
                                             const std::string&, const RecordParams&, double);

QPAINLEVE_INSTANTIATE(double)
QPAINLEVE_INSTANTIATE(Mp)

#undef QPAINLEVE_INSTANTIATE

}  // namespace qpainleve
