#include "moonshine/modgroup.hpp"

#include <algorithm>
#include <cctype>
#include <mutex>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

namespace moonshine {

namespace {

long euler_phi_small(long n) {
  long phi = n;
  for (long q = 2; q * q <= n; ++q)
    if (n % q == 0) {
      phi = phi / q * (q - 1);
      while (n % q == 0) n /= q;
    }
  if (n > 1) phi = phi / n * (n - 1);
  return phi;
}

}  // namespace

void GroupElt::normalize() {
  if (a_ == 0 && b_ == 0 && c_ == 0 && d_ == 0)
    throw std::domain_error("zero matrix is not a group element");
  if (det() == 0) throw std::domain_error("singular matrix is not a group element");
  Int g = gcd(gcd(abs(a_), abs(b_)), gcd(abs(c_), abs(d_)));
  if (g > 1) {
    a_ /= g;
    b_ /= g;
    c_ /= g;
    d_ /= g;
  }
  for (const Int* v : {&a_, &b_, &c_, &d_}) {
    if (*v == 0) continue;
    if (*v < 0) {
      a_ = -a_;
      b_ = -b_;
      c_ = -c_;
      d_ = -d_;
    }
    break;
  }
}

GroupElt::GroupElt(const Rat& a, const Rat& b, const Rat& c, const Rat& d) {
  Int L = lcm(lcm(a.get_den(), b.get_den()), lcm(c.get_den(), d.get_den()));
  Rat f(L);
  a_ = Rat(a * f).get_num();
  b_ = Rat(b * f).get_num();
  c_ = Rat(c * f).get_num();
  d_ = Rat(d * f).get_num();
  normalize();
}

GroupElt GroupElt::from_ints(long a, long b, long c, long d) {
  return GroupElt(Rat(a), Rat(b), Rat(c), Rat(d));
}

GroupElt GroupElt::operator*(const GroupElt& o) const {
  return GroupElt(Rat(a_ * o.a_ + b_ * o.c_), Rat(a_ * o.b_ + b_ * o.d_),
                  Rat(c_ * o.a_ + d_ * o.c_), Rat(c_ * o.b_ + d_ * o.d_));
}

GroupElt GroupElt::inverse() const {
  // adjugate; projective scaling absorbs 1/det
  return GroupElt(Rat(d_), Rat(-b_), Rat(-c_), Rat(a_));
}

bool GroupElt::operator<(const GroupElt& o) const {
  auto t = std::array<Int, 4>{a_, b_, c_, d_};
  auto u = std::array<Int, 4>{o.a_, o.b_, o.c_, o.d_};
  return t < u;
}

std::complex<double> GroupElt::act(std::complex<double> tau) const {
  if (tau.imag() <= 0.0) throw std::domain_error("act: Im tau must be positive");
  std::complex<double> num = a_.get_d() * tau + std::complex<double>(b_.get_d(), 0.0);
  std::complex<double> den = c_.get_d() * tau + std::complex<double>(d_.get_d(), 0.0);
  if (std::abs(den) == 0.0) throw std::domain_error("act: c tau + d vanished");
  return num / den;
}

GroupElt GroupElt::conjugate_by_theta(long p) const {
  return GroupElt(Rat(a_), make_rat(b_, Int(p)), Rat(c_ * p), Rat(d_));
}

bool GroupElt::reducible_mod_p(long p) const {
  Int D = det();
  if (D <= 0) return false;
  Int s = sqrt(D);
  if (s * s != D) return false;
  return s % p != 0;
}

Psl2pElt GroupElt::reduce_mod_p(long p) const {
  Int D = det();
  if (D <= 0)
    throw std::domain_error("reduce_mod_p: matrix does not scale to determinant 1 (det " +
                            D.get_str() + ")");
  Int s = sqrt(D);
  if (s * s != D)
    throw std::domain_error("reduce_mod_p: determinant " + D.get_str() +
                            " is not a square, class has no det-1 representative");
  long sm = mpz_class(s % p).get_si();
  if (sm == 0)
    throw std::domain_error(
        "reduce_mod_p: entries are not p-integral (conjugate by theta_p first)");
  // inverse of s mod p
  long sinv = 1;
  for (long t = 1; t < p; ++t)
    if ((t * sm) % p == 1) {
      sinv = t;
      break;
    }
  auto red = [&](const Int& v) {
    long r = mpz_class(((v % p) + p) % p).get_si();
    return (r * sinv) % p;
  };
  return Psl2pElt::make(p, red(a_), red(b_), red(c_), red(d_));
}

std::string GroupElt::str() const {
  std::ostringstream os;
  os << "[[" << a_.get_str() << "," << b_.get_str() << "],[" << c_.get_str() << ","
     << d_.get_str() << "]]";
  return os.str();
}

// --- Psl2pElt ----------------------------------------------------------------

Psl2pElt Psl2pElt::make(long p, long a, long b, long c, long d) {
  auto norm = [p](long v) { return ((v % p) + p) % p; };
  std::array<long, 4> m1{norm(a), norm(b), norm(c), norm(d)};
  long det = ((m1[0] * m1[3] - m1[1] * m1[2]) % p + p) % p;
  if (det != 1) throw std::domain_error("Psl2pElt: determinant must be 1 mod p");
  std::array<long, 4> m2{norm(-m1[0]), norm(-m1[1]), norm(-m1[2]), norm(-m1[3])};
  Psl2pElt out;
  out.p = p;
  out.m = std::min(m1, m2);
  return out;
}

Psl2pElt Psl2pElt::operator*(const Psl2pElt& o) const {
  if (p != o.p) throw std::domain_error("Psl2pElt: mixed primes");
  return make(p, m[0] * o.m[0] + m[1] * o.m[2], m[0] * o.m[1] + m[1] * o.m[3],
              m[2] * o.m[0] + m[3] * o.m[2], m[2] * o.m[1] + m[3] * o.m[3]);
}

Psl2pElt Psl2pElt::inverse() const { return make(p, m[3], -m[1], -m[2], m[0]); }

long Psl2pElt::order() const {
  Psl2pElt x = *this;
  long n = 1;
  while (!x.is_identity()) {
    x = x * *this;
    ++n;
    if (n > 2 * p * p) throw std::logic_error("order: runaway");
  }
  return n;
}

std::string Psl2pElt::str() const {
  std::ostringstream os;
  os << "[[" << m[0] << "," << m[1] << "],[" << m[2] << "," << m[3] << "]] mod " << p;
  return os.str();
}

// --- group closure -----------------------------------------------------------

bool Psl2pGroup::contains(const Psl2pElt& x) const {
  return std::binary_search(elements.begin(), elements.end(), x);
}

bool Psl2pGroup::contains_all(const Psl2pGroup& other) const {
  for (const auto& x : other.elements)
    if (!contains(x)) return false;
  return true;
}

bool Psl2pGroup::same_elements(const Psl2pGroup& other) const {
  return elements == other.elements;
}

Psl2pGroup generate(const std::vector<Psl2pElt>& gens) {
  if (gens.empty()) throw std::domain_error("generate: empty generator list");
  long p = gens.front().p;
  for (const auto& g : gens)
    if (g.p != p) throw std::domain_error("generate: mixed primes");
  std::vector<Psl2pElt> elems;
  std::vector<Psl2pElt> frontier{Psl2pElt::make(p, 1, 0, 0, 1)};
  std::set<Psl2pElt> seen(frontier.begin(), frontier.end());
  while (!frontier.empty()) {
    std::vector<Psl2pElt> next;
    for (const auto& x : frontier)
      for (const auto& g : gens) {
        Psl2pElt y = x * g;
        if (seen.insert(y).second) next.push_back(y);
      }
    frontier = std::move(next);
  }
  Psl2pGroup out;
  out.p = p;
  out.generators = gens;
  out.elements.assign(seen.begin(), seen.end());
  return out;
}

long psl2p_order(long p) { return p * (p * p - 1) / 2; }

const std::vector<Psl2pElt>& psl2p_all(long p) {
  static std::map<long, std::vector<Psl2pElt>> cache;
  static std::mutex m;
  std::lock_guard<std::mutex> lk(m);
  auto it = cache.find(p);
  if (it != cache.end()) return it->second;
  Psl2pGroup g = generate({Psl2pElt::make(p, 0, -1, 1, 0), Psl2pElt::make(p, 1, 1, 0, 1)});
  if (static_cast<long>(g.elements.size()) != psl2p_order(p))
    throw std::logic_error("psl2p_all: wrong order");
  return cache.emplace(p, std::move(g.elements)).first->second;
}

GroupId identify(const Psl2pGroup& g) {
  GroupId id;
  id.order = static_cast<long>(g.elements.size());
  for (const auto& x : g.elements) id.order_census[x.order()]++;

  auto census_of_cyclic = [](long n) {
    std::map<long, long> c;
    for (long d = 1; d <= n; ++d)
      if (n % d == 0) c[d] += euler_phi_small(d);
    return c;
  };
  auto census_of_dihedral = [&](long n) {
    std::map<long, long> c = census_of_cyclic(n);
    c[2] += n;
    return c;
  };

  if (id.order == 1) {
    id.name = "trivial";
  } else if (id.order == psl2p_order(g.p)) {
    id.name = "L2p";
  } else if (id.order_census.count(id.order)) {
    id.name = "cyclic_" + std::to_string(id.order);
  } else if (id.order % 2 == 0 && id.order / 2 >= 2 &&
             id.order_census == census_of_dihedral(id.order / 2)) {
    id.name = "dihedral_" + std::to_string(id.order / 2);
  } else if (id.order == 12 && id.order_census == std::map<long, long>{{1, 1}, {2, 3}, {3, 8}}) {
    id.name = "A4";
  } else if (id.order == 24 &&
             id.order_census == std::map<long, long>{{1, 1}, {2, 9}, {3, 8}, {4, 6}}) {
    id.name = "S4";
  } else if (id.order == 60 &&
             id.order_census == std::map<long, long>{{1, 1}, {2, 15}, {3, 20}, {5, 24}}) {
    id.name = "A5";
  } else {
    id.name = "other";
  }
  return id;
}

// --- words -------------------------------------------------------------------

namespace {

struct WordParser {
  const std::string& s;
  size_t pos = 0;
  const std::map<std::string, Psl2pElt>& gens;
  long p;

  WordParser(const std::string& text, const std::map<std::string, Psl2pElt>& g, long prime)
      : s(text), gens(g), p(prime) {}

  [[noreturn]] void fail(const std::string& what) {
    throw std::domain_error("word parse error in '" + s + "': " + what);
  }
  void skip() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }
  bool eat(char c) {
    skip();
    if (pos < s.size() && s[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }

  Psl2pElt atom() {
    skip();
    if (eat('(')) {
      Psl2pElt v = product();
      if (!eat(')')) fail("expected ')'");
      return maybe_power(v);
    }
    size_t start = pos;
    while (pos < s.size() &&
           (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_')) ++pos;
    if (pos == start) fail("expected generator name");
    std::string name = s.substr(start, pos - start);
    auto it = gens.find(name);
    if (it == gens.end()) fail("undeclared generator '" + name + "'");
    return maybe_power(it->second);
  }

  Psl2pElt maybe_power(Psl2pElt v) {
    skip();
    if (eat('^')) {
      skip();
      bool neg = eat('-');
      size_t start = pos;
      while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
      if (pos == start) fail("expected exponent");
      long e = std::stol(s.substr(start, pos - start));
      Psl2pElt base = neg ? v.inverse() : v;
      Psl2pElt out = Psl2pElt::make(p, 1, 0, 0, 1);
      for (long i = 0; i < e; ++i) out = out * base;
      return out;
    }
    return v;
  }

  Psl2pElt product() {
    Psl2pElt v = atom();
    while (true) {
      skip();
      if (eat('*')) {
        v = v * atom();
      } else if (pos < s.size() && s[pos] != ')' && s[pos] != '=') {
        v = v * atom();  // juxtaposition
      } else {
        break;
      }
    }
    return v;
  }
};

}  // namespace

Psl2pElt eval_word(const std::map<std::string, Psl2pElt>& gens, const std::string& word) {
  if (gens.empty()) throw std::domain_error("eval_word: no generators");
  WordParser wp(word, gens, gens.begin()->second.p);
  Psl2pElt v = wp.product();
  wp.skip();
  if (wp.pos != word.size()) wp.fail("trailing input");
  return v;
}

std::vector<RelationReport> check_relations(const std::map<std::string, Psl2pElt>& gens,
                                            const std::vector<std::string>& words) {
  std::vector<RelationReport> out;
  for (const auto& w : words) out.push_back({w, eval_word(gens, w).is_identity()});
  return out;
}

// --- cusps -------------------------------------------------------------------

Cusp Cusp::make(long p, long a, long c) {
  a = ((a % p) + p) % p;
  c = ((c % p) + p) % p;
  if (a == 0 && c == 0) throw std::domain_error("cusp vector must be nonzero");
  long na = (p - a) % p, nc = (p - c) % p;
  Cusp out;
  out.p = p;
  if (std::pair(a, c) <= std::pair(na, nc)) {
    out.a = a;
    out.c = c;
  } else {
    out.a = na;
    out.c = nc;
  }
  return out;
}

std::string Cusp::str() const { return "(" + std::to_string(a) + "," + std::to_string(c) + ")"; }

std::vector<Cusp> cusps(long p) {
  std::set<Cusp> out;
  for (long a = 0; a < p; ++a)
    for (long c = 0; c < p; ++c)
      if (a || c) out.insert(Cusp::make(p, a, c));
  return std::vector<Cusp>(out.begin(), out.end());
}

Cusp apply_to_cusp(const Psl2pElt& g, const Cusp& v) {
  return Cusp::make(g.p, g.m[0] * v.a + g.m[1] * v.c, g.m[2] * v.a + g.m[3] * v.c);
}

std::vector<std::vector<Cusp>> cusp_orbits(const Psl2pGroup& g) {
  std::vector<Cusp> all = cusps(g.p);
  std::set<Cusp> unseen(all.begin(), all.end());
  std::vector<std::vector<Cusp>> orbits;
  while (!unseen.empty()) {
    Cusp seed = *unseen.begin();
    std::set<Cusp> orbit;
    std::vector<Cusp> frontier{seed};
    orbit.insert(seed);
    while (!frontier.empty()) {
      std::vector<Cusp> next;
      for (const auto& v : frontier)
        for (const auto& x : g.generators) {
          Cusp w = apply_to_cusp(x, v);
          if (orbit.insert(w).second) next.push_back(w);
        }
      frontier = std::move(next);
    }
    orbits.emplace_back(orbit.begin(), orbit.end());
    for (const auto& v : orbit) unseen.erase(v);
  }
  std::sort(orbits.begin(), orbits.end(),
            [](const auto& x, const auto& y) { return x.front() < y.front(); });
  return orbits;
}

// --- genus -------------------------------------------------------------------

GenusData genus(const Psl2pGroup& g) {
  const std::vector<Psl2pElt>& all = psl2p_all(g.p);
  std::map<Psl2pElt, long> coset_of;
  long n_cosets = 0;
  for (const auto& x : all) {
    if (coset_of.count(x)) continue;
    for (const auto& h : g.elements) coset_of[h * x] = n_cosets;
    ++n_cosets;
  }
  auto perm_of = [&](const Psl2pElt& y) {
    std::vector<long> perm(n_cosets, -1);
    std::map<long, Psl2pElt> reps;
    for (const auto& x : all)
      if (!reps.count(coset_of[x])) reps[coset_of[x]] = x;
    for (const auto& [ci, rep] : reps) perm[ci] = coset_of[rep * y];
    return perm;
  };
  Psl2pElt S = Psl2pElt::make(g.p, 0, -1, 1, 0);
  Psl2pElt T = Psl2pElt::make(g.p, 1, 1, 0, 1);
  std::vector<long> ps = perm_of(S), pst = perm_of(S * T), pt = perm_of(T);

  GenusData out;
  out.index = n_cosets;
  for (long i = 0; i < n_cosets; ++i) {
    if (ps[i] == i) ++out.eps2;
    if (pst[i] == i) ++out.eps3;
  }
  std::vector<bool> seen(n_cosets, false);
  for (long i = 0; i < n_cosets; ++i) {
    if (seen[i]) continue;
    ++out.epsinf;
    long j = i;
    while (!seen[j]) {
      seen[j] = true;
      j = pt[j];
    }
  }
  // 1 + mu/12 - eps2/4 - eps3/3 - epsinf/2, exact
  long num = 12 + out.index - 3 * out.eps2 - 4 * out.eps3 - 6 * out.epsinf;
  if (num % 12 != 0 || num < 0)
    throw std::logic_error("genus: non-integral or negative genus signals a bug");
  out.genus = num / 12;
  return out;
}

// --- star_k ------------------------------------------------------------------

namespace {

// integer lift of a PSL(2,p) class to SL(2,Z)
GroupElt lift_to_sl2z(const Psl2pElt& x) {
  long p = x.p;
  long a = x.m[0], b = x.m[1], c = x.m[2], d = x.m[3];
  // pick a coprime bottom row congruent to (c, d) mod p
  long c1 = c, d1 = d;
  bool found = false;
  for (long i = 0; i <= 8 && !found; ++i)
    for (long j = 0; j <= 8 && !found; ++j)
      if (std::gcd(std::abs(c + i * p), std::abs(d + j * p)) == 1) {
        c1 = c + i * p;
        d1 = d + j * p;
        found = true;
      }
  if (!found) throw std::logic_error("lift: no coprime bottom row found");
  // solve a1 d1 - b1 c1 = 1 with a1 = a mod p, b1 = b mod p
  Int m = Int(a) * d1 - Int(b) * c1;  // = 1 mod p
  Int k = (m - 1) / p;
  // a1 = a + p s, b1 = b + p t with s d1 - t c1 = -k
  Int s, t, gg;
  Int D1(d1), NC1(-c1);
  mpz_gcdext(gg.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), D1.get_mpz_t(), NC1.get_mpz_t());
  s *= -k;
  t *= -k;
  Int a1 = Int(a) + Int(p) * s;
  Int b1 = Int(b) + Int(p) * t;
  GroupElt out(Rat(a1), Rat(b1), Rat(c1), Rat(d1));
  if (out.det() != 1) throw std::logic_error("lift: determinant not 1");
  return out;
}

bool divides(long k, const Int& c) { return c % std::abs(k) == 0; }

}  // namespace

std::vector<GroupElt> star_k(const std::vector<GroupElt>& gens, long k, long p,
                             unsigned rng_seed) {
  if (k == 0 || std::gcd(std::abs(k), p) != 1)
    throw std::domain_error("star_k: k must be nonzero and coprime to p");
  std::vector<Psl2pElt> images;
  for (const auto& g : gens) images.push_back(g.reduce_mod_p(p));
  Psl2pGroup image = generate(images);

  std::mt19937 rng(rng_seed);
  // elementary Gamma(p) moves that adjust the lower-left entry
  GroupElt Lp = GroupElt::from_ints(1, 0, p, 1);
  GroupElt Lm = GroupElt::from_ints(1, 0, -p, 1);
  GroupElt Rp = GroupElt::from_ints(1, p, 0, 1);
  GroupElt Rm = GroupElt::from_ints(1, -p, 0, 1);
  std::vector<GroupElt> moves{Lp, Lm, Rp, Rm};

  std::vector<GroupElt> mapped;
  for (const auto& cls : image.elements) {
    GroupElt rep = lift_to_sl2z(cls);
    if (rng_seed != 0) {
      // randomize the representative inside its Gamma(p) coset
      for (int i = 0; i < 6; ++i) {
        const GroupElt& mv = moves[rng() % moves.size()];
        rep = (rng() % 2) ? rep * mv : mv * rep;
      }
    }
    // search the coset for k | c by BFS over elementary moves
    if (!divides(k, rep.c())) {
      std::vector<GroupElt> frontier{rep};
      std::set<GroupElt> seen{rep};
      bool found = false;
      for (int depth = 0; depth < 12 && !found; ++depth) {
        std::vector<GroupElt> next;
        for (const auto& x : frontier) {
          for (const auto& mv : moves) {
            for (GroupElt y : {x * mv, mv * x}) {
              if (!seen.insert(y).second) continue;
              if (divides(k, y.c())) {
                rep = y;
                found = true;
                break;
              }
              next.push_back(y);
            }
            if (found) break;
          }
          if (found) break;
        }
        frontier = std::move(next);
      }
      if (!found)
        throw std::runtime_error("star_k: no representative with k | c within search bound");
    }
    mapped.push_back(GroupElt(Rat(rep.a()), Rat(rep.b() * k), make_rat(rep.c(), Int(k)),
                              Rat(rep.d())));
  }
  return mapped;
}

// --- named matrices ----------------------------------------------------------

const std::map<std::string, GroupElt>& named_matrices() {
  static const std::map<std::string, GroupElt> table = [] {
    std::map<std::string, GroupElt> m;
    auto E = GroupElt::from_ints;
    m.emplace("S", E(0, -1, 1, 0));
    m.emplace("T", E(1, 1, 0, 1));
    for (long p : {5L, 7L, 11L, 13L}) {
      m.emplace("theta_" + std::to_string(p), E(1, 0, 0, p));
      for (long r = 1; r < p; ++r)
        m.emplace("T^{" + std::to_string(r) + "/" + std::to_string(p) + "}",
                  GroupElt(Rat(1), make_rat(r, p), Rat(0), Rat(1)));
      m.emplace("W_" + std::to_string(p * p), E(0, -1, p * p, 0));
      m.emplace("Gamma" + std::to_string(p) + "-image", E(1, 0, 0, 1));
    }
    m.emplace("delta_5", E(2, 5, 5, 13));
    m.emplace("delta_7", E(2, 7, 7, 25));
    m.emplace("delta_11", E(-40, -11, 11, 3));
    m.emplace("delta_13", E(85, 13, 13, 2));
    m.emplace("deltatilde_5", E(2, 1, 25, 13));

    // alpha = T S delta_5 T for the p=5 case (i)
    GroupElt alpha5 = m.at("T") * m.at("S") * m.at("delta_5") * m.at("T");
    m.emplace("alpha_5i", alpha5);
    // p=5 case (ii) extra generator, theta-conjugate of T^{2/5} W_25 T^{2/5}
    m.emplace("alpha_5ii", E(2, 3, 1, 2));
    m.emplace("alpha_7i", E(3, 2, -5, -3));
    m.emplace("alpha_7ii", E(3, -2, 5, -3));
    m.emplace("alphatilde_7", GroupElt(Rat(3), make_rat(2, 7), Rat(-35), Rat(-3)));
    m.emplace("alphatilde_7_star", GroupElt(Rat(3), make_rat(-2, 7), Rat(35), Rat(-3)));
    m.emplace("alphaprime_7", E(-4, 1, -5, 1));
    m.emplace("alpha_11", E(1, 1, -2, -1));
    m.emplace("alphaprime_11", E(1, 5, -2, -9));
    // Delta = delta_13^2 = diag(3, 9) mod Gamma(13)
    m.emplace("Delta_13", m.at("delta_13") * m.at("delta_13"));
    for (long r = 0; r <= 3; ++r) {
      long pow2 = 1 << (3 - r);
      long pow2r = 1 << r;
      m.emplace("alpha_13_r" + std::to_string(r), E(11, pow2, 92 * pow2r, 67));
    }
    return m;
  }();
  return table;
}

GroupElt GroupElt::parse(const std::string& text) {
  auto& names = named_matrices();
  auto it = names.find(text);
  if (it != names.end()) return it->second;
  // [[a,b],[c,d]]
  std::string t;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) t += c;
  if (t.size() < 9 || t.substr(0, 2) != "[[" || t.substr(t.size() - 2) != "]]")
    throw std::domain_error("cannot parse matrix '" + text + "'");
  std::string inner = t.substr(2, t.size() - 4);
  auto mid = inner.find("],[");
  if (mid == std::string::npos) throw std::domain_error("cannot parse matrix '" + text + "'");
  auto split = [](const std::string& row) {
    auto comma = row.find(',');
    if (comma == std::string::npos) throw std::domain_error("bad matrix row");
    return std::pair(parse_rat(row.substr(0, comma)), parse_rat(row.substr(comma + 1)));
  };
  auto [a, b] = split(inner.substr(0, mid));
  auto [c, d] = split(inner.substr(mid + 3));
  return GroupElt(a, b, c, d);
}

}  // namespace moonshine
