#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mfcalc/equiv.hpp"
#include "mfcalc/mf.hpp"
#include "mfcalc/pushforward.hpp"
#include "mfcalc/support.hpp"

namespace mfc {

/// Problem-file error with a 1-based position.
class ParseError : public Error {
 public:
  ParseError(int line, int col, const std::string& msg)
      : Error("line " + std::to_string(line) + ", col " + std::to_string(col) + ": " + msg),
        line(line),
        col(col) {}
  int line, col;
};

struct MfBlock {
  std::string name;
  std::vector<int> deg0, deg1;
  PolyMatrix delta1, delta0;

  bool operator==(const MfBlock& o) const {
    return name == o.name && deg0 == o.deg0 && deg1 == o.deg1 && delta1 == o.delta1 &&
           delta0 == o.delta0;
  }
};

struct GroupBlock {
  GroupData data;
  std::map<std::string, std::vector<CharVec>> weights0, weights1;

  bool operator==(const GroupBlock& o) const {
    return data.orders == o.data.orders && data.action == o.data.action &&
           data.chi == o.data.chi && weights0 == o.weights0 && weights1 == o.weights1;
  }
};

struct MapBlock {
  RingPtr source_ring;
  Poly source_potential;
  std::vector<Poly> images;
  std::vector<Expo> basis;

  bool operator==(const MapBlock& o) const {
    return *source_ring == *o.source_ring && source_potential == o.source_potential &&
           images == o.images && basis == o.basis;
  }
};

/// Parsed and fully validated problem file: a ring, the potential, named
/// factorizations and the optional group/points/map blocks.
struct ProblemFile {
  RingPtr ring;
  Poly potential;
  std::vector<MfBlock> mfs;
  std::optional<GroupBlock> group;
  std::vector<std::pair<std::string, Point>> points;
  std::optional<MapBlock> map;

  const MfBlock* find_mf(const std::string& name) const;
  MatrixFactorization mf(const std::string& name) const;
  /// Requires a group block with weights for this factorization.
  EquivariantMF equivariant(const std::string& name) const;
  FiniteRingMap finite_map() const;

  bool operator==(const ProblemFile& o) const;
};

/// Parses and validates; every factorization must verify and all group/map
/// data must be consistent (errors carry line/column positions).
ProblemFile parse_problem(const std::string& text);

/// Canonical serialization; parse(serialize(parse(t))) == parse(t).
std::string serialize_problem(const ProblemFile& pf);

}  // namespace mfc
