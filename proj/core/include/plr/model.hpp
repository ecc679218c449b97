#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <limits>
#include <set>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace plr {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ParseError : Error {
  ParseError(const std::string &msg, int line, int column)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + msg),
        line(line), column(column) {}
  int line;
  int column;
};

struct SignatureError : Error {
  using Error::Error;
};

struct PreconditionError : Error {
  using Error::Error;
};

struct OracleError : Error {
  using Error::Error;
};

struct RefcheckLimitError : Error {
  using Error::Error;
};

struct TimeoutError : Error {
  using Error::Error;
};

template <class Tag> struct Name {
  std::string value;

  Name() = default;
  Name(std::string v) : value(std::move(v)) {}
  Name(const char *v) : value(v) {}

  const std::string &str() const { return value; }
  friend auto operator<=>(const Name &, const Name &) = default;
  friend bool operator==(const Name &, const Name &) = default;
};

struct ConceptTag {};
struct RoleTag {};
struct PropertyTag {};

using ConceptName = Name<ConceptTag>;
using RoleName = Name<RoleTag>;
using PropertyName = Name<PropertyTag>;

inline constexpr std::uint64_t kMaxEndpoint =
    static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max());

// Closed integer interval. lo > hi is allowed and denotes the empty set.
struct Interval {
  std::uint64_t lo = 0;
  std::uint64_t hi = 0;

  bool empty() const { return lo > hi; }
  bool contains(std::uint64_t v) const { return lo <= v && v <= hi; }
  bool contains(const Interval &o) const { return lo <= o.lo && o.hi <= hi; }
  bool overlaps(const Interval &o) const {
    return !empty() && !o.empty() && lo <= o.hi && o.lo <= hi;
  }
  friend auto operator<=>(const Interval &, const Interval &) = default;
  friend bool operator==(const Interval &, const Interval &) = default;
};

struct Constraint {
  PropertyName prop;
  Interval iv;
  friend auto operator<=>(const Constraint &, const Constraint &) = default;
  friend bool operator==(const Constraint &, const Constraint &) = default;
};

struct Restriction;

// A conjunction. Atoms and constraints are sets; restrictions are kept
// sorted and duplicate-free by canonicalize(). An empty conjunction is top.
struct SimpleConcept {
  bool bottom = false;
  std::set<ConceptName> atoms;
  std::set<Constraint> constraints;
  std::vector<Restriction> restrictions;

  static SimpleConcept make_bottom();
  bool is_top() const;
  void canonicalize();

  SimpleConcept &atom(std::string a);
  SimpleConcept &interval(std::string f, std::uint64_t lo, std::uint64_t hi);
  SimpleConcept &some(std::string r, SimpleConcept filler);
};

struct Restriction {
  RoleName role;
  SimpleConcept filler;
};

int compare(const SimpleConcept &a, const SimpleConcept &b);
int compare(const Restriction &a, const Restriction &b);

inline bool operator==(const SimpleConcept &a, const SimpleConcept &b) { return compare(a, b) == 0; }
inline bool operator<(const SimpleConcept &a, const SimpleConcept &b) { return compare(a, b) < 0; }
inline bool operator==(const Restriction &a, const Restriction &b) { return compare(a, b) == 0; }
inline bool operator<(const Restriction &a, const Restriction &b) { return compare(a, b) < 0; }

class FullConcept {
public:
  FullConcept(SimpleConcept single);
  explicit FullConcept(std::vector<SimpleConcept> disjuncts);

  const std::vector<SimpleConcept> &disjuncts() const { return disjuncts_; }
  std::size_t size() const { return disjuncts_.size(); }
  const SimpleConcept &operator[](std::size_t i) const { return disjuncts_[i]; }

  void canonicalize();

  friend bool operator==(const FullConcept &a, const FullConcept &b) {
    return a.disjuncts_ == b.disjuncts_;
  }

private:
  std::vector<SimpleConcept> disjuncts_;
};

std::size_t hash_value(const SimpleConcept &c);
std::size_t hash_value(const FullConcept &c);

struct ConceptHash {
  std::size_t operator()(const SimpleConcept &c) const { return hash_value(c); }
  std::size_t operator()(const FullConcept &c) const { return hash_value(c); }
};

// Number of interval constraints at any depth.
std::size_t interval_count(const SimpleConcept &c);
// Number of existential restrictions at any depth.
std::size_t restriction_count(const SimpleConcept &c);
std::size_t depth(const SimpleConcept &c);

struct ConceptSignature {
  std::set<std::string> concepts;
  std::set<std::string> roles;
  std::set<std::string> properties;
};

void collect_signature(const SimpleConcept &c, ConceptSignature &out);
ConceptSignature signature_of(const FullConcept &c);

struct Inclusion {
  ConceptName sub;
  ConceptName sup;
  friend auto operator<=>(const Inclusion &, const Inclusion &) = default;
  friend bool operator==(const Inclusion &, const Inclusion &) = default;
};

struct Disjoint {
  ConceptName a;
  ConceptName b;
  friend auto operator<=>(const Disjoint &, const Disjoint &) = default;
  friend bool operator==(const Disjoint &, const Disjoint &) = default;
};

enum class SymbolKind { Any, Role, Property };

// func(x) where x may be a role or a concrete property. The kind is usually
// left open; it is resolved by usage.
struct Functional {
  std::string symbol;
  SymbolKind kind = SymbolKind::Any;
  friend auto operator<=>(const Functional &, const Functional &) = default;
  friend bool operator==(const Functional &, const Functional &) = default;
};

struct Range {
  RoleName role;
  ConceptName cls;
  friend auto operator<=>(const Range &, const Range &) = default;
  friend bool operator==(const Range &, const Range &) = default;
};

using Axiom = std::variant<Inclusion, Disjoint, Functional, Range>;

struct KbSignature {
  std::set<std::string> concepts;
  std::set<std::string> roles;
  std::set<std::string> properties;
  std::set<std::string> functional;
};

class KnowledgeBase {
public:
  KnowledgeBase() = default;
  explicit KnowledgeBase(std::vector<Axiom> axioms);

  void add(Axiom a);
  const std::set<Axiom> &axioms() const { return axioms_; }
  std::size_t size() const { return axioms_.size(); }
  bool empty() const { return axioms_.empty(); }

  // Throws SignatureError if a token is declared both a role and a property.
  KbSignature signature() const;

  friend bool operator==(const KnowledgeBase &a, const KnowledgeBase &b) {
    return a.axioms_ == b.axioms_;
  }

private:
  std::set<Axiom> axioms_;
};

// Rejects a concept that uses one token both as a role and as a property, or
// that disagrees with the KB's declared symbol kinds.
void check_namespaces(const KbSignature &kb, const ConceptSignature &c);

} // namespace plr
