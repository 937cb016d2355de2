#include "dualbound/linear_program.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>
#include <unordered_set>

namespace dualbound {

std::string_view to_string(Sense s) { return s == Sense::Minimize ? "min" : "max"; }

std::string_view to_string(Relation r) {
  switch (r) {
    case Relation::LessEqual:
      return "<=";
    case Relation::Equal:
      return "=";
    case Relation::GreaterEqual:
      return ">=";
  }
  return "?";
}

bool is_valid_name(std::string_view name) {
  if (name.empty() || !std::isalpha(static_cast<unsigned char>(name.front()))) return false;
  return std::all_of(name.begin(), name.end(), [](unsigned char c) { return std::isalnum(c) || c == '_'; });
}

std::string indexed_name(std::string_view base, std::initializer_list<long> indices) {
  std::string out(base);
  for (long i : indices) {
    out += '_';
    out += std::to_string(i);
  }
  return out;
}

LinearExpr& LinearExpr::add(std::size_t var, const Rational& coef) {
  if (coef.is_zero()) return *this;
  auto [it, inserted] = coeffs_.try_emplace(var, coef);
  if (!inserted) {
    it->second += coef;
    if (it->second.is_zero()) coeffs_.erase(it);
  }
  return *this;
}

std::vector<Term> LinearExpr::terms() const {
  std::vector<Term> out;
  out.reserve(coeffs_.size());
  for (const auto& [var, coef] : coeffs_) out.push_back({var, coef});
  return out;
}

std::size_t LinearProgram::add_variable(std::string name, VarSign sign) {
  if (!is_valid_name(name)) throw std::invalid_argument("malformed variable name '" + name + "'");
  const std::size_t idx = vars_.size();
  if (!var_index_.emplace(name, idx).second) throw std::invalid_argument("duplicate variable '" + name + "'");
  vars_.push_back({std::move(name), sign});
  return idx;
}

std::vector<Term> LinearProgram::normalize_terms(std::vector<Term> terms) const {
  LinearExpr expr;
  for (auto& t : terms) {
    if (t.var >= vars_.size()) throw std::invalid_argument("term references an undeclared variable");
    expr.add(t.var, t.coef);
  }
  return expr.terms();
}

std::size_t LinearProgram::add_constraint(std::string name, std::vector<Term> terms, Relation relation,
                                          Rational rhs) {
  if (!is_valid_name(name)) throw std::invalid_argument("malformed constraint name '" + name + "'");
  const std::size_t idx = rows_.size();
  if (!row_index_.emplace(name, idx).second) throw std::invalid_argument("duplicate constraint '" + name + "'");
  rows_.push_back({std::move(name), normalize_terms(std::move(terms)), relation, std::move(rhs)});
  return idx;
}

void LinearProgram::set_objective(std::vector<Term> terms, Rational offset) {
  objective_ = normalize_terms(std::move(terms));
  offset_ = std::move(offset);
}

std::optional<std::size_t> LinearProgram::find_variable(std::string_view name) const {
  if (auto it = var_index_.find(std::string(name)); it != var_index_.end()) return it->second;
  return std::nullopt;
}

std::optional<std::size_t> LinearProgram::find_constraint(std::string_view name) const {
  if (auto it = row_index_.find(std::string(name)); it != row_index_.end()) return it->second;
  return std::nullopt;
}

std::size_t LinearProgram::variable_index(std::string_view name) const {
  if (auto idx = find_variable(name)) return *idx;
  throw std::out_of_range("unknown variable '" + std::string(name) + "'");
}

std::size_t LinearProgram::nonzero_count() const {
  std::size_t n = objective_.size();
  for (const auto& row : rows_) n += row.terms.size();
  return n;
}

LinearProgram LinearProgram::without_constraints(std::span<const std::string> names) const {
  const std::unordered_set<std::string> drop(names.begin(), names.end());
  LinearProgram out(sense_);
  out.vars_ = vars_;
  out.var_index_ = var_index_;
  out.objective_ = objective_;
  out.offset_ = offset_;
  for (const auto& row : rows_) {
    if (drop.count(row.name) != 0) continue;
    out.row_index_.emplace(row.name, out.rows_.size());
    out.rows_.push_back(row);
  }
  return out;
}

const Scalar* Point::find(const std::string& name) const {
  auto it = values.find(name);
  return it == values.end() ? nullptr : &it->second;
}

bool Point::all_exact() const {
  return std::all_of(values.begin(), values.end(), [](const auto& kv) { return is_exact(kv.second); });
}

}  // namespace dualbound
