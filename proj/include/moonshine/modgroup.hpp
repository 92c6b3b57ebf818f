#pragma once

#include <array>
#include <complex>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "moonshine/rat.hpp"

namespace moonshine {

struct Psl2pElt;

// 2x2 rational matrix up to scalar (an element of PGL(2,Q)). Stored scaled to
// coprime integer entries with the first nonzero entry positive, so equality
// of projective classes is structural equality.
class GroupElt {
 public:
  GroupElt() : a_(1), b_(0), c_(0), d_(1) {}
  GroupElt(const Rat& a, const Rat& b, const Rat& c, const Rat& d);
  static GroupElt from_ints(long a, long b, long c, long d);

  const Int& a() const { return a_; }
  const Int& b() const { return b_; }
  const Int& c() const { return c_; }
  const Int& d() const { return d_; }
  Int det() const { return a_ * d_ - b_ * c_; }

  GroupElt operator*(const GroupElt& o) const;
  GroupElt inverse() const;
  bool operator==(const GroupElt& o) const {
    return a_ == o.a_ && b_ == o.b_ && c_ == o.c_ && d_ == o.d_;
  }
  bool operator!=(const GroupElt& o) const { return !(*this == o); }
  bool operator<(const GroupElt& o) const;

  // Moebius action on the upper half plane; throws when c tau + d = 0 or
  // the matrix is singular.
  std::complex<double> act(std::complex<double> tau) const;

  // theta_p X theta_p^{-1} with theta_p = [[1,0],[0,p]]
  GroupElt conjugate_by_theta(long p) const;

  // Reduction to PSL(2,p): requires the primitive integer form to have
  // determinant s^2 with p not dividing s, i.e. the class scales to a
  // p-integral matrix of determinant 1. Throws otherwise.
  Psl2pElt reduce_mod_p(long p) const;
  bool reducible_mod_p(long p) const;

  std::string str() const;
  // Accepts "[[a,b],[c,d]]" with rational entries, or a built-in name
  // (S, T, T^{r/p}, W_N, delta_p, theta_p, alpha_..., Delta_13, ...).
  static GroupElt parse(const std::string& text);

 private:
  Int a_, b_, c_, d_;
  void normalize();
};

// Canonical +-representative of a matrix in PSL(2,p).
struct Psl2pElt {
  long p = 0;
  std::array<long, 4> m{1, 0, 0, 1};  // row major, det = 1 mod p

  static Psl2pElt make(long p, long a, long b, long c, long d);
  Psl2pElt operator*(const Psl2pElt& o) const;
  Psl2pElt inverse() const;
  bool operator==(const Psl2pElt& o) const { return p == o.p && m == o.m; }
  bool operator<(const Psl2pElt& o) const { return m < o.m; }
  bool is_identity() const { return m[0] == 1 && m[1] == 0 && m[2] == 0 && m[3] == 1; }
  long order() const;
  std::string str() const;
};

struct Psl2pGroup {
  long p = 0;
  std::vector<Psl2pElt> generators;
  std::vector<Psl2pElt> elements;  // sorted, closed under product and inverse

  bool contains(const Psl2pElt& x) const;
  bool contains_all(const Psl2pGroup& other) const;
  bool same_elements(const Psl2pGroup& other) const;
};

Psl2pGroup generate(const std::vector<Psl2pElt>& gens);
const std::vector<Psl2pElt>& psl2p_all(long p);  // the full group, cached
long psl2p_order(long p);                        // p(p^2-1)/2

// Identification by (order, element-order census); unambiguous for the
// candidate set below at the orders arising here.
struct GroupId {
  std::string name;  // trivial, cyclic_n, dihedral_n, A4, S4, A5, L2p, other
  long order = 0;
  std::map<long, long> order_census;
};
GroupId identify(const Psl2pGroup& g);

// Word evaluation over named generators; words look like "a^3", "(a*b)^2",
// "a*b^-1". Every relation must evaluate to the identity.
struct RelationReport {
  std::string word;
  bool holds = false;
};
std::vector<RelationReport> check_relations(const std::map<std::string, Psl2pElt>& gens,
                                            const std::vector<std::string>& words);
Psl2pElt eval_word(const std::map<std::string, Psl2pElt>& gens, const std::string& word);

// Cusps of Gamma(p): nonzero vectors of F_p^2 up to sign.
struct Cusp {
  long p = 0;
  long a = 0, c = 0;  // canonical representative: lexicographically smaller of +-
  static Cusp make(long p, long a, long c);
  bool operator==(const Cusp& o) const { return p == o.p && a == o.a && c == o.c; }
  bool operator<(const Cusp& o) const { return std::pair(a, c) < std::pair(o.a, o.c); }
  std::string str() const;
};
std::vector<Cusp> cusps(long p);
Cusp apply_to_cusp(const Psl2pElt& g, const Cusp& v);
std::vector<std::vector<Cusp>> cusp_orbits(const Psl2pGroup& g);

// Genus data of the modular curve attached to the preimage of g in PSL(2,Z):
// permutation action of PSL(2,p) on right cosets of g, counting fixed points
// of S and ST and the cycles of T.
struct GenusData {
  long index = 0;   // mu
  long eps2 = 0;    // fixed points of the image of S
  long eps3 = 0;    // fixed points of the image of ST
  long epsinf = 0;  // cycles of the image of T
  long genus = 0;   // 1 + mu/12 - eps2/4 - eps3/3 - epsinf/2
};
GenusData genus(const Psl2pGroup& g);

// Theorem-3 star operation: choose coset representatives of Gamma(p) in
// <gens, Gamma(p)> with k | c, return the mapped generators (a, k b; c/k, d).
std::vector<GroupElt> star_k(const std::vector<GroupElt>& gens, long k, long p,
                             unsigned rng_seed = 0);

// Built-in named matrices carrying the published values.
const std::map<std::string, GroupElt>& named_matrices();

}  // namespace moonshine
