#include <array>
#include <initializer_list>

#include "gpcci/error.hpp"
#include "gpcci/gpc.hpp"

namespace gpcci {

namespace {

GPConstraint make(int N, int m, int mu, std::int64_t k0, std::initializer_list<std::int64_t> k,
                  ConstraintKind kind = ConstraintKind::inequality) {
  GPConstraint c;
  c.N = N;
  c.m = m;
  c.mu = mu;
  c.kappa0 = k0;
  c.kappa.assign(k.begin(), k.end());
  c.kind = kind;
  return c;
}

Catalog empty(int N, int m) {
  Catalog cat;
  cat.N = N;
  cat.m = m;
  return cat;
}

Catalog rank6() {
  Catalog cat = empty(3, 6);
  cat.constraints.push_back(make(3, 6, 1, 2, {-1, -1, 0, -1, 0, 0}));
  // n_r + n_{7-r} = 1
  cat.equalities.push_back(make(3, 6, 1, 1, {-1, 0, 0, 0, 0, -1}, ConstraintKind::equality));
  cat.equalities.push_back(make(3, 6, 2, 1, {0, -1, 0, 0, -1, 0}, ConstraintKind::equality));
  cat.equalities.push_back(make(3, 6, 3, 1, {0, 0, -1, -1, 0, 0}, ConstraintKind::equality));
  return cat;
}

Catalog rank7() {
  Catalog cat = empty(3, 7);
  cat.constraints = {
      make(3, 7, 1, 2, {-1, -1, 0, -1, 0, 0, -1}),
      make(3, 7, 2, 2, {-1, -1, 0, 0, -1, -1, 0}),
      make(3, 7, 3, 2, {0, -1, -1, -1, -1, 0, 0}),
      make(3, 7, 4, 2, {-1, 0, -1, -1, 0, -1, 0}),
  };
  return cat;
}

// The first 19 of the 31 rank-eight inequalities; the rest load from a file.
Catalog rank8() {
  Catalog cat = empty(3, 8);
  cat.constraints = {
      make(3, 8, 1, 2, {-1, -1, 0, -1, 0, 0, -1, 0}),
      make(3, 8, 2, 2, {-1, -1, 0, 0, -1, -1, 0, 0}),
      make(3, 8, 3, 2, {0, -1, -1, -1, -1, 0, 0, 0}),
      make(3, 8, 4, 2, {-1, 0, -1, -1, 0, -1, 0, 0}),
      make(3, 8, 5, 1, {-1, -1, 1, 0, 0, 0, 0, 0}),
      make(3, 8, 6, 1, {0, -1, 0, 0, -1, 0, 1, 0}),
      make(3, 8, 7, 1, {-1, 0, 0, 0, 0, -1, 1, 0}),
      make(3, 8, 8, 1, {0, -1, 0, -1, 0, 1, 0, 0}),
      make(3, 8, 9, 1, {-1, 0, 0, -1, 1, 0, 0, 0}),
      make(3, 8, 10, 1, {0, 0, -1, -1, 0, 0, 1, 0}),
      make(3, 8, 11, 1, {-1, 0, 0, 0, 0, 0, 0, -1}),
      make(3, 8, 12, 0, {0, -1, 1, 0, 0, 1, 1, 0}),
      make(3, 8, 13, 0, {0, 0, 0, -1, 1, 1, 1, 0}),
      make(3, 8, 14, 0, {-1, 0, 1, 0, 1, 0, 1, 0}),
      make(3, 8, 15, 2, {0, -1, -1, -2, 1, 0, 1, -1}),
      make(3, 8, 16, 2, {-1, 0, -1, -2, 1, 1, 0, -1}),
      make(3, 8, 17, 2, {-1, -2, 1, -1, 1, 0, 0, -1}),
      make(3, 8, 18, 2, {-1, -2, 1, 0, -1, 1, 0, -1}),
      make(3, 8, 19, 0, {-1, -1, 2, 1, 1, 0, 0, 0}),
  };
  return cat;
}

// Seven coefficient rows; D^mu = sum kappa_i n_i and
// D^{7+mu} = 2 - sum kappa_{9-i} n_i.
Catalog rank48() {
  static constexpr std::array<std::array<std::int64_t, 8>, 7> rows{{
      {-1, 0, 0, 1, 0, 1, 1, 0},
      {-1, 0, 0, 1, 1, 0, 0, 1},
      {-1, 0, 1, 0, 0, 1, 0, 1},
      {-1, 1, 0, 0, 0, 0, 1, 1},
      {0, -1, 0, 1, 0, 1, 0, 1},
      {0, 0, -1, 1, 0, 0, 1, 1},
      {0, 0, 0, 0, -1, 1, 1, 1},
  }};
  Catalog cat = empty(4, 8);
  for (int mu = 1; mu <= 7; ++mu) {
    GPConstraint c;
    c.N = 4;
    c.m = 8;
    c.mu = mu;
    c.kappa.assign(rows[mu - 1].begin(), rows[mu - 1].end());
    cat.constraints.push_back(c);
  }
  for (int mu = 1; mu <= 7; ++mu) {
    GPConstraint c;
    c.N = 4;
    c.m = 8;
    c.mu = 7 + mu;
    c.kappa0 = 2;
    for (int i = 1; i <= 8; ++i) c.kappa.push_back(-rows[mu - 1][8 - i]);
    cat.constraints.push_back(c);
  }
  cat.bounds.push_back(make(4, 8, 1, 1, {-1, 0, 0, 0, 0, 0, 0, 0}, ConstraintKind::bound));
  return cat;
}

}  // namespace

bool has_builtin_catalog(int N, int m) {
  return (N == 3 && (m == 6 || m == 7 || m == 8)) || (N == 4 && m == 8);
}

Catalog catalog(int N, int m) {
  if (N == 3 && m == 6) return rank6();
  if (N == 3 && m == 7) return rank7();
  if (N == 3 && m == 8) return rank8();
  if (N == 4 && m == 8) return rank48();
  throw Error(Errc::unsupported_rank, "no built-in catalog for (N,m)=(" + std::to_string(N) + "," +
                                          std::to_string(m) + "); load one with a catalog file");
}

}  // namespace gpcci
