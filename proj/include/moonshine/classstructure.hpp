#pragma once

#include <map>
#include <string>
#include <vector>

#include "moonshine/cyclotomic.hpp"
#include "moonshine/modgroup.hpp"

namespace moonshine {

// Legendre symbol by the power formula a^((p-1)/2) mod p.
int legendre(long a, long p);

// Order-N Dirichlet character on (Z/p)*, sending the smallest primitive root
// to generator_image (a primitive N-th root of unity).
struct DirichletChar {
  long p = 0;
  long order = 0;
  std::vector<CycNum> values;  // index a in [1, p-1]

  const CycNum& at(long a) const;
  DirichletChar times(const DirichletChar& o) const;
  DirichletChar quotient(const DirichletChar& o) const;
};
DirichletChar dirichlet_char(long p, long N, const CycNum& generator_image);
long smallest_primitive_root(long p);

// Fricke labeling of the p+1 projective lines of F_p^2, constant on each
// line minus the origin. Convention: g^a h^b <-> vector (a, b); the line
// through (1, n) carries gh^n and its powers, (1, 0) is <g>, (0, 1) is <h>.
class ClassStructure {
 public:
  long p = 0;
  std::string case_id;
  std::map<long, bool> line_fricke;  // key n in [0, p-1] means line (1:n); key p means (0:1)

  static const long kVerticalLine;  // sentinel for (0:1) == p in line_fricke

  bool line_of_vector(long x, long y) const;  // Fricke flag of the line through (x, y)
  bool vertical_fricke() const { return line_fricke.at(p); }

  // Cusp +-(a,c) is singular iff g^a h^{-c} is Fricke, i.e. the line through
  // (a, -c) is labeled Fricke.
  bool cusp_singular(const Cusp& v) const;
  std::vector<Cusp> singular_cusps() const;

  // Does the cusp action of m preserve the labeling?
  bool preserves_labels(const Psl2pElt& m) const;
  // The full label-preserving subgroup of PSL(2,p), by filtering.
  Psl2pGroup fricke_stabilizer() const;
};

// The enumerated cases: 5i, 5ii, 7i, 7ii, 7iii, 11, 13r0..13r3.
ClassStructure build_class_structure(const std::string& case_id);
std::vector<std::string> all_case_ids();

// Generators (PSL(2,Z) side) of the fixing group claimed for the case,
// beyond Gamma(p): names resolved through named_matrices().
std::vector<std::string> case_generator_names(const std::string& case_id);
// Presentation relations checked for the case, as words over those names.
std::vector<std::string> case_relations(const std::string& case_id);
// Alternate generator set (the second 7iii / 11 group), empty if none.
std::vector<std::string> case_generator_names_alt(const std::string& case_id);
std::vector<std::string> case_relations_alt(const std::string& case_id);

}  // namespace moonshine
