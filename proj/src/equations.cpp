#include "qpainleve/equations.hpp"

#include "qpainleve/errors.hpp"

namespace qpainleve {

namespace {

// Shorthand: T(sign, x, a1, a2, {q0, q1, q2, q3}, {site}, {site}).
Term T(int sign, int x, int a1, int a2, std::array<int, 4> q, std::array<int, 3> s0, std::array<int, 3> s1) {
  return Term{sign, x, a1, a2, q, {s0, s1}};
}

Equation thm2(const char* id, Term t0, Term t1, Term t2) {
  return Equation{id, EquationFamily::Thm2, {t0, t1, t2}, {}};
}

Equation thm3(const char* id, Term t0, Term t1, Term t2) {
  return Equation{id, EquationFamily::Thm3, {t0, t1, t2}, {}};
}

// q-exponent vectors are {const, m, n, k}.
std::vector<Equation> build_thm2() {
  return {
      thm2("eq1", T(+1, 2, 0, 0, {0, 1, 0, 2}, {-1, -1, 1}, {0, 0, 0}),
           T(-1, 1, 0, 0, {0, 1, -1, 1}, {0, -1, 1}, {-1, 0, 0}),
           T(+1, 0, 0, 0, {0, 0, 1, 0}, {0, 0, 1}, {-1, -1, 0})),
      thm2("eq2", T(+1, 2, 0, 0, {0, -1, 2, 2}, {-1, -1, 0}, {0, 0, -1}),
           T(-1, 1, 0, 0, {0, 0, 0, 1}, {-1, 0, 0}, {0, -1, -1}),
           T(+1, 0, 0, 0, {0, 0, 1, 0}, {0, 0, 0}, {-1, -1, -1})),
      thm2("eq3", T(+1, 1, 0, 0, {0, 1, -1, 1}, {-1, -2, 0}, {0, 0, -1}),
           T(-1, 0, 0, 0, {0, 0, 1, 0}, {-1, -1, 0}, {0, -1, -1}),
           T(+1, 0, 0, 0, {0, 0, 0, 0}, {0, -1, 0}, {-1, -1, -1})),
      thm2("eq4", T(+1, 1, 0, 0, {0, 0, 0, 0}, {-1, -1, 1}, {0, -1, 0}),
           T(-1, 1, 0, 0, {0, 0, 1, 0}, {0, -1, 1}, {-1, -1, 0}),
           T(+1, 0, 0, 0, {0, 1, -1, -1}, {-1, -2, 0}, {0, 0, 1})),
      thm2("eq5", T(+1, 2, 0, 0, {0, 1, 0, 2}, {-2, -1, 1}, {0, 0, 0}),
           T(-1, 1, 0, 0, {0, 1, -1, 1}, {-1, -1, 1}, {-1, 0, 0}),
           T(+1, 0, 0, 0, {0, 0, 0, 0}, {0, 0, 1}, {-2, -1, 0})),
      thm2("eq6", T(+1, 2, 0, 0, {0, -1, 0, 2}, {-2, -1, 0}, {0, 0, -1}),
           T(-1, 1, 0, 0, {0, 0, -1, 1}, {-1, 0, 0}, {-1, -1, -1}),
           T(+1, 0, 0, 0, {0, 0, 0, 0}, {0, 0, 0}, {-2, -1, -1})),
      thm2("eq7", T(+1, 1, 0, 0, {0, 2, -1, 1}, {0, 0, 0}, {-1, -2, 0}),
           T(-1, 0, 0, 0, {0, 0, 1, 0}, {0, -1, 0}, {-1, -1, 0}),
           T(+1, 0, 0, 0, {0, 0, 0, 0}, {0, -1, 1}, {-1, -1, -1})),
      thm2("eq8", T(+1, 1, 0, 0, {0, 0, 0, 1}, {0, -1, -1}, {-1, -1, 1}),
           T(-1, 1, 0, 0, {0, 0, 1, 1}, {-1, -1, 0}, {0, -1, 0}),
           T(+1, 0, 0, 0, {0, 2, -1, 0}, {0, 0, 0}, {-1, -2, 0})),
  };
}

// q-exponent vectors are {const, a, b, c}.
std::vector<Equation> build_thm3() {
  return {
      thm3("eq11", T(+1, 0, -1, -1, {0, 1, -1, -1}, {1, 1, 0}, {0, 0, 1}),
           T(-1, 2, 0, 0, {0, 0, 0, 1}, {1, 1, 1}, {0, 0, 0}),
           T(+1, 1, 0, 1, {0, 0, 1, 0}, {1, 0, 0}, {0, 1, 1})),
      thm3("eq12", T(+1, 2, -1, -1, {0, 1, -1, 2}, {1, 1, 0}, {0, 0, -1}),
           T(-1, 0, 0, 0, {0, 0, 0, 0}, {1, 1, -1}, {0, 0, 0}),
           T(+1, 1, 0, 1, {0, 0, 1, 1}, {1, 0, 0}, {0, 1, -1})),
      thm3("eq13", T(+1, 1, 1, 1, {0, 0, 1, 1}, {1, 2, 0}, {0, 0, -1}),
           T(-1, 0, 0, 0, {0, 1, 0, 0}, {1, 1, -1}, {0, 1, 0}),
           T(+1, 0, 0, -1, {0, 1, -1, 0}, {1, 1, 0}, {0, 1, -1})),
      thm3("eq14", T(+1, 0, 1, 1, {0, 0, 1, -1}, {1, 2, 0}, {0, 0, 1}),
           T(-1, 1, 0, 0, {0, 1, 0, 0}, {1, 1, 1}, {0, 1, 0}),
           T(+1, 1, 0, -1, {0, 1, -1, 0}, {1, 1, 0}, {0, 1, 1})),
      thm3("eq15", T(+1, 0, 0, 0, {0, 1, 0, -1}, {2, 1, 0}, {0, 0, 1}),
           T(-1, 2, 1, 0, {0, 0, 0, 1}, {2, 1, 1}, {0, 0, 0}),
           T(+1, 1, 1, 1, {0, 0, 1, 0}, {1, 1, 1}, {1, 0, 0})),
      thm3("eq16", T(+1, 2, 0, 0, {0, 1, 0, 1}, {2, 1, 0}, {0, 0, -1}),
           T(-1, 0, 1, 0, {0, 0, 0, -1}, {2, 1, -1}, {0, 0, 0}),
           T(+1, 1, 1, 1, {0, 0, 1, 0}, {1, 1, -1}, {1, 0, 0})),
      thm3("eq17", T(+1, 1, 1, 1, {0, 0, 0, 0}, {0, 0, 0}, {1, 2, 0}),
           T(-1, 0, -1, -1, {0, 2, -2, -1}, {1, 1, 0}, {0, 1, 0}),
           T(+1, 0, -1, 0, {0, 2, -1, -1}, {0, 1, 1}, {1, 1, -1})),
      thm3("eq18", T(+1, 0, 1, 1, {0, 0, 0, 0}, {0, 0, 0}, {1, 2, 0}),
           T(-1, 1, -1, -1, {0, 2, -2, 1}, {1, 1, 0}, {0, 1, 0}),
           T(+1, 1, -1, 0, {0, 2, -1, 1}, {0, 1, -1}, {1, 1, 1})),
  };
}

Equation build_eq18_printed() {
  Equation e = build_thm3().back();
  e.id = "eq18.printed";
  e.terms[2].q = {0, 2, 2, 1};
  e.warn = "printed third exponent 2a+2b+c; the relation holds with 2a-b+c";
  return e;
}

}  // namespace

const std::vector<Equation>& thm2_equations() {
  static const std::vector<Equation> eqs = build_thm2();
  return eqs;
}

const std::vector<Equation>& thm3_equations() {
  static const std::vector<Equation> eqs = build_thm3();
  return eqs;
}

const Equation& thm3_eq18_printed() {
  static const Equation eq = build_eq18_printed();
  return eq;
}

const Equation& find_equation(const std::string& id) {
  for (const auto* list : {&thm2_equations(), &thm3_equations()}) {
    for (const auto& e : *list)
      if (e.id == id) return e;
  }
  if (id == thm3_eq18_printed().id) return thm3_eq18_printed();
  throw DomainError("unknown equation id '" + id + "'");
}

}  // namespace qpainleve
