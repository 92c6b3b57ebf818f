#include "moonshine/classstructure.hpp"

#include <numeric>
#include <stdexcept>

namespace moonshine {

int legendre(long a, long p) {
  a = ((a % p) + p) % p;
  if (a == 0) return 0;
  long r = 1, base = a, e = (p - 1) / 2;
  while (e) {
    if (e & 1) r = (r * base) % p;
    base = (base * base) % p;
    e >>= 1;
  }
  return r == 1 ? 1 : -1;
}

long smallest_primitive_root(long p) {
  for (long m = 2; m < p; ++m) {
    long x = m % p, ord = 1;
    while (x != 1) {
      x = (x * m) % p;
      ++ord;
    }
    if (ord == p - 1) return m;
  }
  throw std::domain_error("no primitive root (p not prime?)");
}

const CycNum& DirichletChar::at(long a) const {
  a = ((a % p) + p) % p;
  if (a == 0) throw std::domain_error("Dirichlet character at 0");
  return values[a - 1];
}

DirichletChar DirichletChar::times(const DirichletChar& o) const {
  if (p != o.p) throw std::domain_error("character product: mixed moduli");
  DirichletChar out;
  out.p = p;
  out.values.resize(p - 1);
  for (long a = 1; a < p; ++a) out.values[a - 1] = at(a) * o.at(a);
  long N = 1;
  for (long a = 1; a < p; ++a) {
    long k = 1;
    CycNum v = out.at(a);
    while (v != CycNum(Rat(1))) {
      v *= out.at(a);
      ++k;
    }
    N = std::lcm(N, k);
  }
  out.order = N;
  return out;
}

DirichletChar DirichletChar::quotient(const DirichletChar& o) const {
  DirichletChar inv = o;
  for (auto& v : inv.values) v = v.inverse();
  return times(inv);
}

DirichletChar dirichlet_char(long p, long N, const CycNum& generator_image) {
  if ((p - 1) % N != 0) throw std::domain_error("dirichlet_char: N must divide p-1");
  if (generator_image.pow(N) != CycNum(Rat(1)))
    throw std::domain_error("dirichlet_char: generator image is not an N-th root of unity");
  if (N > 1) {
    for (long d = 1; d < N; ++d)
      if (N % d == 0 && generator_image.pow(d) == CycNum(Rat(1)))
        throw std::domain_error("dirichlet_char: generator image is not primitive");
  }
  long m = smallest_primitive_root(p);
  DirichletChar out;
  out.p = p;
  out.order = N;
  out.values.assign(p - 1, CycNum(Rat(1)));
  long x = 1;
  CycNum v(Rat(1));
  for (long j = 0; j < p - 1; ++j) {
    out.values[x - 1] = v;
    x = (x * m) % p;
    v *= generator_image;
  }
  return out;
}

// --- class structures ----------------------------------------------------------

const long ClassStructure::kVerticalLine = -1;  // unused marker; vertical stored at key p

bool ClassStructure::line_of_vector(long x, long y) const {
  x = ((x % p) + p) % p;
  y = ((y % p) + p) % p;
  if (x == 0 && y == 0) throw std::domain_error("line of the zero vector");
  if (x == 0) return line_fricke.at(p);
  // slope n with (x, y) ~ (1, n)
  long xinv = 1;
  for (long t = 1; t < p; ++t)
    if ((t * x) % p == 1) {
      xinv = t;
      break;
    }
  return line_fricke.at((y * xinv) % p);
}

bool ClassStructure::cusp_singular(const Cusp& v) const { return line_of_vector(v.a, -v.c); }

std::vector<Cusp> ClassStructure::singular_cusps() const {
  std::vector<Cusp> out;
  for (const Cusp& v : cusps(p))
    if (cusp_singular(v)) out.push_back(v);
  return out;
}

bool ClassStructure::preserves_labels(const Psl2pElt& m) const {
  for (const Cusp& v : cusps(p))
    if (cusp_singular(apply_to_cusp(m, v)) != cusp_singular(v)) return false;
  return true;
}

Psl2pGroup ClassStructure::fricke_stabilizer() const {
  std::vector<Psl2pElt> members;
  for (const Psl2pElt& m : psl2p_all(p))
    if (preserves_labels(m)) members.push_back(m);
  Psl2pGroup out;
  out.p = p;
  out.generators = members;  // the filtered set is already closed
  out.elements = members;
  return out;
}

namespace {

ClassStructure make_structure(long p, const std::string& id,
                              const std::vector<long>& fricke_slopes, bool vertical_fricke) {
  ClassStructure cs;
  cs.p = p;
  cs.case_id = id;
  for (long n = 0; n < p; ++n) cs.line_fricke[n] = false;
  cs.line_fricke[p] = vertical_fricke;
  for (long n : fricke_slopes) cs.line_fricke.at(n) = true;
  return cs;
}

}  // namespace

ClassStructure build_class_structure(const std::string& case_id) {
  // g = (1:0) is always Fricke. h = (0:1). The S-sets live on the lines
  // (1:n), n != 0, labeled by the case's character condition on n.
  if (case_id == "5i" || case_id == "5ii") {
    std::vector<long> fricke{0};
    bool s1 = (case_id == "5i");  // case i: S1 (squares) Fricke
    for (long n = 1; n < 5; ++n)
      if ((legendre(n, 5) == 1) == s1) fricke.push_back(n);
    return make_structure(5, case_id, fricke, false);
  }
  if (case_id == "7i" || case_id == "7ii") {
    std::vector<long> fricke{0};
    bool s1 = (case_id == "7i");
    for (long n = 1; n < 7; ++n)
      if ((legendre(n, 7) == 1) == s1) fricke.push_back(n);
    return make_structure(7, case_id, fricke, false);
  }
  if (case_id == "7iii") {
    std::vector<long> fricke;
    for (long n = 0; n < 7; ++n) fricke.push_back(n);
    return make_structure(7, case_id, fricke, true);
  }
  if (case_id == "11") {
    std::vector<long> fricke;
    for (long n = 0; n < 11; ++n) fricke.push_back(n);
    return make_structure(11, case_id, fricke, true);
  }
  if (case_id.size() == 4 && case_id.substr(0, 3) == "13r") {
    long r = case_id[3] - '0';
    if (r < 0 || r > 3) throw std::domain_error("unknown case " + case_id);
    // S_r consists of lines (1:n) with chi_D^(4)(n) = i^r
    DirichletChar chi = dirichlet_char(13, 4, CycNum::i());
    CycNum target = CycNum::i().pow(r);
    std::vector<long> fricke{0};
    for (long n = 1; n < 13; ++n)
      if (chi.at(n) == target) fricke.push_back(n);
    return make_structure(13, case_id, fricke, false);
  }
  throw std::domain_error("unknown case " + case_id);
}

std::vector<std::string> all_case_ids() {
  return {"5i", "5ii", "7i", "7ii", "7iii", "11", "13r0", "13r1", "13r2", "13r3"};
}

std::vector<std::string> case_generator_names(const std::string& id) {
  if (id == "5i") return {"delta_5", "alpha_5i"};
  if (id == "5ii") return {"delta_5", "alpha_5ii"};
  if (id == "7i") return {"delta_7", "alpha_7i"};
  if (id == "7ii") return {"delta_7", "alpha_7ii"};
  if (id == "7iii") return {"delta_7", "alpha_7i", "S"};
  if (id == "11") return {"delta_11", "alpha_11", "S"};
  if (id.substr(0, 3) == "13r") return {"Delta_13", "alpha_13_r" + id.substr(3)};
  throw std::domain_error("unknown case " + id);
}

std::vector<std::string> case_generator_names_alt(const std::string& id) {
  if (id == "7iii") return {"alphaprime_7", "S"};
  if (id == "11") return {"delta_11", "alphaprime_11", "S"};
  return {};
}

std::vector<std::string> case_relations(const std::string& id) {
  if (id == "5i")
    return {"alpha_5i^3", "delta_5^2", "(alpha_5i*delta_5)^2"};
  if (id == "5ii")
    return {"alpha_5ii^3", "delta_5^2", "(alpha_5ii*delta_5)^2"};
  if (id == "7i")
    return {"(delta_7*alpha_7i^-1)^3", "alpha_7i^2", "(delta_7*alpha_7i^-1*alpha_7i)^3"};
  if (id == "7ii")
    return {"(delta_7*alpha_7ii^-1)^3", "alpha_7ii^2", "(delta_7*alpha_7ii^-1*alpha_7ii)^3"};
  if (id == "7iii")
    // alpha1 = alpha S, alpha2 = delta_7 S, alpha3 = S
    return {"(alpha_7i*S)^2",           "(delta_7*S)^2",
            "S^2",                      "(alpha_7i*S*delta_7*S)^3",
            "(delta_7*S*S)^3",          "(S*alpha_7i*S)^2"};
  if (id == "11")
    // alpha1 = delta_11 S alpha, alpha2 = S, alpha3 = alpha
    return {"(delta_11*S*alpha_11)^2",
            "S^2",
            "alpha_11^2",
            "(delta_11*S*alpha_11*S)^3",
            "(delta_11*S*alpha_11*alpha_11)^2",
            "(S*alpha_11)^5",
            "(delta_11*S*alpha_11*S*alpha_11)^5"};
  if (id.substr(0, 3) == "13r") {
    std::string a = "alpha_13_r" + id.substr(3);
    return {"Delta_13^3", a + "^2", "(Delta_13*" + a + ")^3"};
  }
  throw std::domain_error("unknown case " + id);
}

std::vector<std::string> case_relations_alt(const std::string& id) {
  if (id == "7iii")
    // beta1 = S, beta2 = S alphaprime
    return {"S^2", "(S*alphaprime_7)^3", "(S*S*alphaprime_7)^4"};
  if (id == "11")
    return {"(delta_11*S*alphaprime_11)^2", "S^2", "alphaprime_11^2"};
  return {};
}

}  // namespace moonshine
