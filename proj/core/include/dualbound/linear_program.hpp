#pragma once

#include <cstddef>
#include <initializer_list>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "dualbound/rational.hpp"
#include "dualbound/scalar.hpp"

namespace dualbound {

enum class Sense { Minimize, Maximize };
enum class VarSign { NonNegative, Free };
enum class Relation { LessEqual, Equal, GreaterEqual };

std::string_view to_string(Sense s);
std::string_view to_string(Relation r);

struct Variable {
  std::string name;
  VarSign sign = VarSign::NonNegative;
};

struct Term {
  std::size_t var;
  Rational coef;
};

struct Constraint {
  std::string name;
  std::vector<Term> terms;  // sorted by variable index, no zeros, no repeats
  Relation relation = Relation::LessEqual;
  Rational rhs;
};

// Names follow [A-Za-z][A-Za-z0-9_]*.
bool is_valid_name(std::string_view name);
// indexed_name("x", {2, 1}) == "x_2_1"
std::string indexed_name(std::string_view base, std::initializer_list<long> indices);

// Accumulates coefficients per variable; repeated adds are summed.
class LinearExpr {
 public:
  LinearExpr& add(std::size_t var, const Rational& coef);
  std::vector<Term> terms() const;

 private:
  std::map<std::size_t, Rational> coeffs_;
};

// A linear program with named variables and named rows. Row names double as
// the names of the dual variables. The objective constant participates in
// objective values only.
class LinearProgram {
 public:
  explicit LinearProgram(Sense sense = Sense::Minimize) : sense_(sense) {}

  // Throws std::invalid_argument on a malformed or duplicate name.
  std::size_t add_variable(std::string name, VarSign sign = VarSign::NonNegative);
  // Terms are merged and zero coefficients dropped. Throws on a bad index or
  // a duplicate/malformed row name.
  std::size_t add_constraint(std::string name, std::vector<Term> terms, Relation relation, Rational rhs);
  void set_objective(std::vector<Term> terms, Rational offset = {});

  Sense sense() const { return sense_; }
  const std::vector<Variable>& variables() const { return vars_; }
  const std::vector<Constraint>& constraints() const { return rows_; }
  const std::vector<Term>& objective() const { return objective_; }
  const Rational& objective_offset() const { return offset_; }

  std::optional<std::size_t> find_variable(std::string_view name) const;
  std::optional<std::size_t> find_constraint(std::string_view name) const;
  // Throws std::out_of_range for unknown names.
  std::size_t variable_index(std::string_view name) const;

  std::size_t nonzero_count() const;
  // Copy with the named rows removed (unknown names are ignored).
  LinearProgram without_constraints(std::span<const std::string> names) const;

 private:
  std::vector<Term> normalize_terms(std::vector<Term> terms) const;

  Sense sense_;
  std::vector<Variable> vars_;
  std::vector<Constraint> rows_;
  std::vector<Term> objective_;
  Rational offset_;
  std::unordered_map<std::string, std::size_t> var_index_;
  std::unordered_map<std::string, std::size_t> row_index_;
};

// Assignment of values to variable names. Unassigned variables read as 0.
struct Point {
  std::map<std::string, Scalar> values;

  void set(const std::string& name, Scalar v) { values.insert_or_assign(name, std::move(v)); }
  const Scalar* find(const std::string& name) const;
  bool all_exact() const;
};

}  // namespace dualbound
