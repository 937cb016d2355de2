#include "dualbound/lp_text.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace dualbound {

namespace {

constexpr std::size_t kTermsPerLine = 8;

struct Coef {
  std::string text;   // magnitude as written
  bool exact = true;  // false when `text` is a rounded decimal
};

Coef format_magnitude(const Rational& q) {
  if (auto dec = q.terminating_decimal()) return {*dec, true};
  return {q.decimal(17), false};
}

class RowWriter {
 public:
  RowWriter(std::ostringstream& out, std::string row) : out_(out), row_(std::move(row)) {}

  void term(const Rational& coef, const std::string& var) {
    const Rational mag = coef.abs();
    const Coef c = format_magnitude(mag);
    if (!c.exact) exact_.push_back("\\ exact " + row_ + " " + var + " " + coef.str());
    std::string piece = coef.sign() < 0 ? "- " : (first_ ? "" : "+ ");
    if (mag != Rational(1)) piece += c.text + " ";
    piece += var;
    push(piece);
  }

  void constant(const Rational& value, const std::string& tag, bool as_term) {
    const Coef c = format_magnitude(value.abs());
    if (!c.exact) exact_.push_back("\\ exact " + row_ + " " + tag + " " + value.str());
    if (as_term) {
      push(std::string(value.sign() < 0 ? "- " : (first_ ? "" : "+ ")) + c.text);
    } else {
      push((value.sign() < 0 ? "-" : "") + c.text);
    }
  }

  void raw(const std::string& piece) { push(piece); }

  void finish(const std::string& prefix) {
    for (const auto& line : exact_) out_ << line << '\n';
    out_ << ' ' << prefix;
    for (std::size_t i = 0; i < pieces_.size(); ++i) {
      if (i > 0 && i % kTermsPerLine == 0) out_ << "\n   ";
      out_ << ' ' << pieces_[i];
    }
    out_ << '\n';
  }

 private:
  void push(std::string piece) {
    pieces_.push_back(std::move(piece));
    first_ = false;
  }

  std::ostringstream& out_;
  std::string row_;
  std::vector<std::string> pieces_;
  std::vector<std::string> exact_;
  bool first_ = true;
};

// ---- reading ----

enum class Tok { Ident, Number, Plus, Minus, Colon, Le, Ge, Eq, End };

struct Token {
  Tok kind;
  std::string text;
};

std::vector<Token> lex(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    const char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
    } else if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_')) ++j;
      out.push_back({Tok::Ident, std::string(s.substr(i, j - i))});
      i = j;
    } else if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      std::size_t j = i;
      while (j < s.size() && (std::isdigit(static_cast<unsigned char>(s[j])) || s[j] == '.')) ++j;
      if (j < s.size() && (s[j] == 'e' || s[j] == 'E')) {
        std::size_t k = j + 1;
        if (k < s.size() && (s[k] == '+' || s[k] == '-')) ++k;
        if (k < s.size() && std::isdigit(static_cast<unsigned char>(s[k]))) {
          while (k < s.size() && std::isdigit(static_cast<unsigned char>(s[k]))) ++k;
          j = k;
        }
      }
      out.push_back({Tok::Number, std::string(s.substr(i, j - i))});
      i = j;
    } else if (c == '+') {
      out.push_back({Tok::Plus, "+"});
      ++i;
    } else if (c == '-') {
      out.push_back({Tok::Minus, "-"});
      ++i;
    } else if (c == ':') {
      out.push_back({Tok::Colon, ":"});
      ++i;
    } else if (c == '<' || c == '>' || c == '=') {
      std::size_t j = i + 1;
      if (j < s.size() && (s[j] == '=' || s[j] == '<' || s[j] == '>')) ++j;
      const std::string_view op = s.substr(i, j - i);
      if (op.find('<') != std::string_view::npos) {
        out.push_back({Tok::Le, "<="});
      } else if (op.find('>') != std::string_view::npos) {
        out.push_back({Tok::Ge, ">="});
      } else {
        out.push_back({Tok::Eq, "="});
      }
      i = j;
    } else {
      throw std::invalid_argument(std::string("unexpected character '") + c + "' in LP text");
    }
  }
  out.push_back({Tok::End, ""});
  return out;
}

enum class Section { None, Objective, Constraints, Bounds, Done };

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
  return out;
}

struct ParsedRow {
  std::string name;
  std::vector<std::pair<std::string, Rational>> terms;
  Rational constant;  // objective only
  Relation relation = Relation::LessEqual;
  Rational rhs;
};

class Reader {
 public:
  LinearProgram parse(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    Section section = Section::None;
    std::string buffer;
    auto flush = [&](Section s) {
      if (s == Section::Objective) parse_objective(buffer);
      if (s == Section::Constraints) parse_constraints(buffer);
      if (s == Section::Bounds) parse_bounds(buffer);
      buffer.clear();
    };
    while (std::getline(in, line)) {
      std::string_view view(line);
      while (!view.empty() && std::isspace(static_cast<unsigned char>(view.front()))) view.remove_prefix(1);
      if (view.empty()) continue;
      if (view.front() == '\\') {
        read_comment(view.substr(1));
        continue;
      }
      const std::string key = lower(view.substr(0, view.find_last_not_of(" \t\r") + 1));
      std::optional<Section> next;
      if (key == "minimize" || key == "minimise" || key == "min") {
        sense_ = Sense::Minimize;
        next = Section::Objective;
      } else if (key == "maximize" || key == "maximise" || key == "max") {
        sense_ = Sense::Maximize;
        next = Section::Objective;
      } else if (key == "subject to" || key == "st" || key == "s.t." || key == "such that") {
        next = Section::Constraints;
      } else if (key == "bounds") {
        next = Section::Bounds;
      } else if (key == "end") {
        next = Section::Done;
      }
      if (next) {
        flush(section);
        section = *next;
        continue;
      }
      if (section == Section::None || section == Section::Done) {
        throw std::invalid_argument("LP text outside of a section: '" + line + "'");
      }
      buffer += line;
      buffer += '\n';
    }
    if (section != Section::Done) throw std::invalid_argument("LP text is missing the End line");
    return build();
  }

 private:
  void read_comment(std::string_view body) {
    std::istringstream in{std::string(body)};
    std::string word;
    std::string row;
    std::string var;
    std::string value;
    if (!(in >> word) || word != "exact") return;
    if (!(in >> row >> var >> value)) throw std::invalid_argument("malformed exact-value comment");
    exact_[{row, var}] = Rational::parse(value);
  }

  Rational exact_or(const std::string& row, const std::string& var, const Rational& parsed) const {
    auto it = exact_.find({row, var});
    return it == exact_.end() ? parsed : it->second;
  }

  // Parses `[+|-] [number] [ident]` sequences until a relation or end.
  std::size_t parse_expression(const std::vector<Token>& toks, std::size_t i, ParsedRow& row, bool allow_constant) {
    bool first = true;
    while (toks[i].kind == Tok::Plus || toks[i].kind == Tok::Minus || toks[i].kind == Tok::Number ||
           toks[i].kind == Tok::Ident) {
      bool negative = false;
      if (toks[i].kind == Tok::Plus || toks[i].kind == Tok::Minus) {
        negative = toks[i].kind == Tok::Minus;
        ++i;
      } else if (!first) {
        throw std::invalid_argument("missing operator between terms in row '" + row.name + "'");
      }
      std::optional<Rational> number;
      if (toks[i].kind == Tok::Number) number = Rational::parse(toks[i++].text);
      if (toks[i].kind == Tok::Ident) {
        const std::string var = toks[i++].text;
        Rational c = number.value_or(Rational(1));
        if (negative) c = -c;
        row.terms.emplace_back(var, exact_or(row.name, var, c));
      } else if (number && allow_constant) {
        Rational c = negative ? -*number : *number;
        row.constant += exact_or(row.name, "#const", c);
      } else {
        throw std::invalid_argument("dangling sign or constant in row '" + row.name + "'");
      }
      first = false;
    }
    return i;
  }

  void parse_objective(const std::string& text) {
    const auto toks = lex(text);
    std::size_t i = 0;
    ParsedRow row;
    row.name = "obj";
    if (toks[0].kind == Tok::Ident && toks[1].kind == Tok::Colon) {
      row.name = toks[0].text;
      i = 2;
    }
    i = parse_expression(toks, i, row, true);
    if (toks[i].kind != Tok::End) throw std::invalid_argument("unexpected token in objective");
    objective_ = std::move(row);
  }

  void parse_constraints(const std::string& text) {
    const auto toks = lex(text);
    std::size_t i = 0;
    while (toks[i].kind != Tok::End) {
      ParsedRow row;
      if (toks[i].kind == Tok::Ident && toks[i + 1].kind == Tok::Colon) {
        row.name = toks[i].text;
        i += 2;
      } else {
        row.name = "R" + std::to_string(rows_.size() + 1);
      }
      i = parse_expression(toks, i, row, false);
      switch (toks[i].kind) {
        case Tok::Le:
          row.relation = Relation::LessEqual;
          break;
        case Tok::Ge:
          row.relation = Relation::GreaterEqual;
          break;
        case Tok::Eq:
          row.relation = Relation::Equal;
          break;
        default:
          throw std::invalid_argument("row '" + row.name + "' has no relation");
      }
      ++i;
      bool negative = false;
      if (toks[i].kind == Tok::Plus || toks[i].kind == Tok::Minus) negative = toks[i++].kind == Tok::Minus;
      if (toks[i].kind != Tok::Number) throw std::invalid_argument("row '" + row.name + "' has no right-hand side");
      Rational rhs = Rational::parse(toks[i++].text);
      row.rhs = exact_or(row.name, "#rhs", negative ? -rhs : rhs);
      rows_.push_back(std::move(row));
    }
  }

  void parse_bounds(const std::string& text) {
    const auto toks = lex(text);
    std::size_t i = 0;
    while (toks[i].kind != Tok::End) {
      if (toks[i].kind == Tok::Ident && toks[i + 1].kind == Tok::Ident && lower(toks[i + 1].text) == "free") {
        free_.push_back(toks[i].text);
        i += 2;
      } else {
        throw std::invalid_argument("only 'name free' bounds are supported");
      }
    }
  }

  std::size_t declare(LinearProgram& p, const std::string& name) {
    if (auto idx = p.find_variable(name)) return *idx;
    const bool is_free = std::find(free_.begin(), free_.end(), name) != free_.end();
    return p.add_variable(name, is_free ? VarSign::Free : VarSign::NonNegative);
  }

  LinearProgram build() {
    LinearProgram p(sense_);
    std::vector<Term> obj;
    if (objective_) {
      for (const auto& [var, c] : objective_->terms) obj.push_back({declare(p, var), c});
    }
    for (const auto& row : rows_) {
      std::vector<Term> terms;
      for (const auto& [var, c] : row.terms) terms.push_back({declare(p, var), c});
      p.add_constraint(row.name, std::move(terms), row.relation, row.rhs);
    }
    for (const auto& name : free_) declare(p, name);
    p.set_objective(std::move(obj), objective_ ? objective_->constant : Rational(0));
    return p;
  }

  Sense sense_ = Sense::Minimize;
  std::optional<ParsedRow> objective_;
  std::vector<ParsedRow> rows_;
  std::vector<std::string> free_;
  std::map<std::pair<std::string, std::string>, Rational> exact_;
};

}  // namespace

std::string write_lp_text(const LinearProgram& p) {
  std::ostringstream out;
  const auto& vars = p.variables();
  out << (p.sense() == Sense::Minimize ? "Minimize" : "Maximize") << '\n';
  {
    RowWriter w(out, "obj");
    for (const auto& t : p.objective()) w.term(t.coef, vars[t.var].name);
    if (!p.objective_offset().is_zero() || p.objective().empty()) w.constant(p.objective_offset(), "#const", true);
    w.finish("obj:");
  }
  out << "Subject To\n";
  for (const auto& row : p.constraints()) {
    RowWriter w(out, row.name);
    for (const auto& t : row.terms) w.term(t.coef, vars[t.var].name);
    if (row.terms.empty() && !vars.empty()) w.raw("0 " + vars.front().name);
    w.raw(std::string(to_string(row.relation)));
    w.constant(row.rhs, "#rhs", false);
    w.finish(row.name + ":");
  }
  bool any_free = false;
  for (const auto& v : vars) {
    if (v.sign != VarSign::Free) continue;
    if (!any_free) out << "Bounds\n";
    any_free = true;
    out << ' ' << v.name << " free\n";
  }
  out << "End\n";
  return out.str();
}

LinearProgram read_lp_text(std::string_view text) { return Reader{}.parse(text); }

}  // namespace dualbound
