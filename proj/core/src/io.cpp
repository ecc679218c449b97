#include "plr/io.hpp"

#include <json.hpp>

#include <cctype>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

namespace plr {

using nlohmann::json;

namespace {

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }

bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == ':' || c == '/' || c == '.' ||
         c == '#';
}

std::pair<int, int> position_of(std::string_view text, std::size_t offset) {
  int line = 1, col = 1;
  for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

bool looks_like_json(std::string_view text) {
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c)))
      continue;
    return c == '{';
  }
  return false;
}

json parse_json(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error &e) {
    auto [l, c] = position_of(text, e.byte == 0 ? 0 : e.byte - 1);
    throw ParseError(std::string("malformed JSON: ") + e.what(), l, c);
  }
}

void check_json_format(const json &j) {
  if (j.contains("format") && j["format"] != std::string(kFormatHeader))
    throw ParseError("unsupported format '" + j["format"].dump() + "'", 1, 1);
}

struct Line {
  int number;
  std::vector<std::pair<std::string, int>> words; // word, column
};

// Splits into non-empty, non-comment lines and consumes an optional header.
std::vector<Line> split_lines(std::string_view text) {
  std::vector<Line> out;
  int number = 0;
  std::size_t pos = 0;
  bool first = true;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos)
      end = text.size();
    std::string_view raw = text.substr(pos, end - pos);
    ++number;
    pos = end + 1;

    Line line{number, {}};
    std::size_t i = 0;
    while (i < raw.size()) {
      while (i < raw.size() && std::isspace(static_cast<unsigned char>(raw[i])))
        ++i;
      if (i >= raw.size())
        break;
      if (line.words.empty() && raw[i] == '#')
        break;
      std::size_t j = i;
      while (j < raw.size() && !std::isspace(static_cast<unsigned char>(raw[j])))
        ++j;
      line.words.emplace_back(std::string(raw.substr(i, j - i)), static_cast<int>(i + 1));
      i = j;
    }
    if (line.words.empty())
      continue;
    if (first && line.words[0].first == "plr-format") {
      if (line.words.size() != 2 || line.words[1].first != "1")
        throw ParseError("unsupported format version", number, line.words.size() > 1 ? line.words[1].second : 1);
      first = false;
      continue;
    }
    first = false;
    out.push_back(std::move(line));
  }
  return out;
}

void expect_words(const Line &l, std::size_t n, const char *shape) {
  if (l.words.size() != n)
    throw ParseError(std::string("expected '") + shape + "'", l.number, l.words[0].second);
}

std::string name_at(const Line &l, std::size_t i) {
  const auto &[w, col] = l.words[i];
  if (w.empty() || !ident_start(w[0]))
    throw ParseError("expected a name, got '" + w + "'", l.number, col);
  for (char c : w)
    if (!ident_char(c))
      throw ParseError("invalid character in name '" + w + "'", l.number, col);
  return w;
}

// A1 & A2 & ... starting at word i, up to (excluding) word `end`.
std::vector<ConceptName> name_list(const Line &l, std::size_t i, std::size_t end) {
  std::vector<ConceptName> out;
  bool wantName = true;
  for (; i < end; ++i) {
    if (wantName) {
      out.push_back(ConceptName{name_at(l, i)});
    } else if (l.words[i].first != "&") {
      throw ParseError("expected '&'", l.number, l.words[i].second);
    }
    wantName = !wantName;
  }
  if (wantName)
    throw ParseError("dangling '&'", l.number, l.words[end - 1].second);
  return out;
}

bool parse_kb_line(const Line &l, KnowledgeBase &kb) {
  const std::string &kw = l.words[0].first;
  if (kw == "sub") {
    expect_words(l, 3, "sub A B");
    kb.add(Inclusion{name_at(l, 1), name_at(l, 2)});
  } else if (kw == "disj") {
    expect_words(l, 3, "disj A B");
    kb.add(Disjoint{name_at(l, 1), name_at(l, 2)});
  } else if (kw == "func" || kw == "func-role" || kw == "func-prop") {
    expect_words(l, 2, "func r");
    SymbolKind k = kw == "func" ? SymbolKind::Any : kw == "func-role" ? SymbolKind::Role : SymbolKind::Property;
    kb.add(Functional{name_at(l, 1), k});
  } else if (kw == "range") {
    expect_words(l, 3, "range r A");
    kb.add(Range{name_at(l, 1), name_at(l, 2)});
  } else {
    return false;
  }
  return true;
}

json names_json(const std::vector<ConceptName> &v) {
  json a = json::array();
  for (const auto &n : v)
    a.push_back(n.value);
  return a;
}

std::vector<ConceptName> names_from_json(const json &j) {
  std::vector<ConceptName> out;
  for (const auto &x : j)
    out.push_back(ConceptName{x.get<std::string>()});
  return out;
}

Axiom kb_axiom_from_json(const json &a, bool &ok) {
  ok = true;
  if (a.contains("sub") && a["sub"].size() == 2 && a["sub"][0].is_string())
    return Inclusion{a["sub"][0].get<std::string>(), a["sub"][1].get<std::string>()};
  if (a.contains("disj"))
    return Disjoint{a["disj"][0].get<std::string>(), a["disj"][1].get<std::string>()};
  if (a.contains("func"))
    return Functional{a["func"].get<std::string>(), SymbolKind::Any};
  if (a.contains("func_role"))
    return Functional{a["func_role"].get<std::string>(), SymbolKind::Role};
  if (a.contains("func_prop"))
    return Functional{a["func_prop"].get<std::string>(), SymbolKind::Property};
  if (a.contains("range"))
    return Range{a["range"][0].get<std::string>(), a["range"][1].get<std::string>()};
  ok = false;
  return Inclusion{};
}

template <class F> auto json_guard(F &&f) {
  try {
    return f();
  } catch (const json::exception &e) {
    throw ParseError(std::string("invalid document structure: ") + e.what(), 1, 1);
  }
}

} // namespace

KnowledgeBase parse_kb(std::string_view text) {
  if (looks_like_json(text)) {
    json j = parse_json(text);
    return json_guard([&] {
      check_json_format(j);
      KnowledgeBase kb;
      int i = 0;
      for (const auto &a : j.at("axioms")) {
        ++i;
        bool ok;
        Axiom ax = kb_axiom_from_json(a, ok);
        if (!ok)
          throw ParseError("unsupported knowledge base axiom " + a.dump(), 1, i);
        kb.add(ax);
      }
      kb.signature();
      return kb;
    });
  }
  KnowledgeBase kb;
  for (const auto &l : split_lines(text))
    if (!parse_kb_line(l, kb))
      throw ParseError("unknown knowledge base axiom '" + l.words[0].first + "'", l.number, l.words[0].second);
  kb.signature();
  return kb;
}

ExternalOntology parse_ontology(std::string_view text) {
  ExternalOntology o;
  if (looks_like_json(text)) {
    json j = parse_json(text);
    json_guard([&] {
      check_json_format(j);
      int i = 0;
      for (const auto &a : j.at("axioms")) {
        ++i;
        if (a.contains("sub"))
          o.add(OntSub{a["sub"][0].get<std::string>(), a["sub"][1].get<std::string>()});
        else if (a.contains("sub_conj"))
          o.add(OntConjSub{names_from_json(a["sub_conj"][0]), a["sub_conj"][1].get<std::string>()});
        else if (a.contains("disj"))
          o.add(OntDisj{a["disj"][0].get<std::string>(), a["disj"][1].get<std::string>()});
        else if (a.contains("def"))
          o.add(OntDef{a["def"][0].get<std::string>(), names_from_json(a["def"][1])});
        else if (a.contains("sub_ex"))
          o.add(OntSubEx{a["sub_ex"][0].get<std::string>(), a["sub_ex"][1].get<std::string>(),
                         a["sub_ex"][2].get<std::string>()});
        else if (a.contains("ex_sub"))
          o.add(OntExSub{a["ex_sub"][0].get<std::string>(), a["ex_sub"][1].get<std::string>(),
                         a["ex_sub"][2].get<std::string>()});
        else
          throw ParseError("unsupported ontology axiom " + a.dump(), 1, i);
      }
      return 0;
    });
    return o;
  }
  for (const auto &l : split_lines(text)) {
    const std::string &kw = l.words[0].first;
    if (kw == "sub") {
      if (l.words.size() < 3)
        throw ParseError("expected 'sub A B' or 'sub A1 & A2 B'", l.number, l.words[0].second);
      auto lhs = name_list(l, 1, l.words.size() - 1);
      std::string sup = name_at(l, l.words.size() - 1);
      if (lhs.size() == 1)
        o.add(OntSub{lhs[0], sup});
      else
        o.add(OntConjSub{lhs, sup});
    } else if (kw == "disj") {
      expect_words(l, 3, "disj A B");
      o.add(OntDisj{name_at(l, 1), name_at(l, 2)});
    } else if (kw == "def") {
      if (l.words.size() < 4 || l.words[2].first != "=")
        throw ParseError("expected 'def B = A1 & A2'", l.number, l.words[0].second);
      o.add(OntDef{name_at(l, 1), name_list(l, 3, l.words.size())});
    } else if (kw == "sub-ex") {
      expect_words(l, 4, "sub-ex A r B");
      o.add(OntSubEx{name_at(l, 1), name_at(l, 2), name_at(l, 3)});
    } else if (kw == "ex-sub") {
      expect_words(l, 4, "ex-sub r A B");
      o.add(OntExSub{name_at(l, 1), name_at(l, 2), name_at(l, 3)});
    } else {
      throw ParseError("axiom '" + kw + "' is outside the supported ontology fragment", l.number,
                       l.words[0].second);
    }
  }
  return o;
}

namespace {

enum class Tok { Ident, Number, String, Punct, End };

struct Token {
  Tok kind;
  std::string text;
  int line;
  int col;
};

class PolicyParser {
public:
  explicit PolicyParser(std::string_view text) : text_(text) { tokenize(); }

  PolicyDocument document() {
    PolicyDocument doc{FullConcept(SimpleConcept{}), {}, {}};
    while (peek_punct("@")) {
      next();
      Token key = expect(Tok::Ident, "directive name");
      Token val = next();
      if (val.kind != Tok::Ident && val.kind != Tok::String && val.kind != Tok::Number)
        fail("expected a directive value", val);
      if (key.text == "id")
        doc.id = val.text;
      else if (key.text == "label")
        doc.label = val.text;
      else
        fail("unknown directive '@" + key.text + "'", key);
    }
    std::vector<SimpleConcept> ds;
    ds.push_back(conjunction());
    while (peek_punct("|")) {
      next();
      ds.push_back(conjunction());
    }
    if (peek().kind != Tok::End)
      fail("unexpected '" + peek().text + "'", peek());
    doc.policy = FullConcept(std::move(ds));
    doc.policy.canonicalize();
    return doc;
  }

private:
  [[noreturn]] void fail(const std::string &msg, const Token &t) { throw ParseError(msg, t.line, t.col); }

  void tokenize() {
    int line = 1, col = 1;
    std::size_t i = 0;
    auto advance = [&](std::size_t n) {
      for (std::size_t k = 0; k < n; ++k, ++i) {
        if (text_[i] == '\n') {
          ++line;
          col = 1;
        } else {
          ++col;
        }
      }
    };
    bool atLineStart = true;
    while (i < text_.size()) {
      char c = text_[i];
      if (c == '\n') {
        advance(1);
        atLineStart = true;
        continue;
      }
      if (std::isspace(static_cast<unsigned char>(c))) {
        advance(1);
        continue;
      }
      if (c == '#' && atLineStart) {
        while (i < text_.size() && text_[i] != '\n')
          advance(1);
        continue;
      }
      if (atLineStart && tokens_.empty() && text_.substr(i, 10) == "plr-format") {
        int l = line, cl = col;
        std::size_t e = text_.find('\n', i);
        std::string_view hdr = text_.substr(i, e == std::string_view::npos ? std::string_view::npos : e - i);
        while (!hdr.empty() && std::isspace(static_cast<unsigned char>(hdr.back())))
          hdr.remove_suffix(1);
        if (hdr != kFormatHeader)
          throw ParseError("unsupported format header", l, cl);
        advance(hdr.size());
        continue;
      }
      atLineStart = false;
      Token t{Tok::Punct, "", line, col};
      if (ident_start(c)) {
        std::size_t j = i;
        while (j < text_.size() && ident_char(text_[j]))
          ++j;
        t.kind = Tok::Ident;
        t.text = std::string(text_.substr(i, j - i));
        advance(j - i);
      } else if (std::isdigit(static_cast<unsigned char>(c))) {
        std::size_t j = i;
        while (j < text_.size() && std::isdigit(static_cast<unsigned char>(text_[j])))
          ++j;
        t.kind = Tok::Number;
        t.text = std::string(text_.substr(i, j - i));
        advance(j - i);
      } else if (c == '"') {
        std::size_t j = i + 1;
        std::string s;
        while (j < text_.size() && text_[j] != '"') {
          if (text_[j] == '\\' && j + 1 < text_.size())
            ++j;
          s += text_[j++];
        }
        if (j >= text_.size())
          throw ParseError("unterminated string", line, col);
        t.kind = Tok::String;
        t.text = s;
        advance(j + 1 - i);
      } else if (std::string_view("&|()[],@").find(c) != std::string_view::npos) {
        t.text = std::string(1, c);
        advance(1);
      } else {
        throw ParseError(std::string("unexpected character '") + c + "'", line, col);
      }
      tokens_.push_back(std::move(t));
    }
    tokens_.push_back(Token{Tok::End, "end of input", line, col});
  }

  const Token &peek() const { return tokens_[pos_]; }
  Token next() { return tokens_[pos_ < tokens_.size() - 1 ? pos_++ : pos_]; }
  bool peek_punct(const char *p) const { return peek().kind == Tok::Punct && peek().text == p; }
  bool peek_word(const char *w) const { return peek().kind == Tok::Ident && peek().text == w; }

  Token expect(Tok kind, const char *what) {
    if (peek().kind != kind)
      fail(std::string("expected ") + what + ", got '" + peek().text + "'", peek());
    return next();
  }

  void expect_punct(const char *p) {
    if (!peek_punct(p))
      fail(std::string("expected '") + p + "', got '" + peek().text + "'", peek());
    next();
  }

  std::uint64_t number() {
    Token t = expect(Tok::Number, "an integer");
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
    if (ec != std::errc() || v > kMaxEndpoint)
      fail("integer out of range", t);
    return v;
  }

  void declare(std::map<std::string, Token> &mine, const std::map<std::string, Token> &other, const Token &t,
               const char *kind) {
    if (other.count(t.text))
      fail("'" + t.text + "' is used both as a role and as a concrete property (here as " + kind + ")", t);
    mine.emplace(t.text, t);
  }

  SimpleConcept conjunction() {
    SimpleConcept c;
    term(c);
    while (peek_punct("&")) {
      next();
      term(c);
    }
    return c;
  }

  void term(SimpleConcept &c) {
    const Token &t = peek();
    if (t.kind == Tok::Punct && t.text == "(") {
      next();
      SimpleConcept inner = conjunction();
      expect_punct(")");
      c.bottom = c.bottom || inner.bottom;
      c.atoms.merge(inner.atoms);
      c.constraints.merge(inner.constraints);
      for (auto &r : inner.restrictions)
        c.some(r.role.value, std::move(r.filler));
      return;
    }
    if (t.kind != Tok::Ident)
      fail("expected a concept, got '" + t.text + "'", t);
    Token w = next();
    if (w.text == "bottom") {
      c.bottom = true;
    } else if (w.text == "top") {
    } else if (w.text == "some") {
      Token role = expect(Tok::Ident, "a role name");
      declare(roles_, props_, role, "a role");
      expect_punct("(");
      SimpleConcept filler = conjunction();
      expect_punct(")");
      c.some(role.text, std::move(filler));
    } else if (peek_word("in")) {
      next();
      declare(props_, roles_, w, "a property");
      expect_punct("[");
      std::uint64_t lo = number();
      expect_punct(",");
      std::uint64_t hi = number();
      expect_punct("]");
      c.interval(w.text, lo, hi);
    } else {
      if (w.text == "in")
        fail("unexpected keyword 'in'", w);
      c.atom(w.text);
    }
  }

  std::string_view text_;
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  std::map<std::string, Token> roles_;
  std::map<std::string, Token> props_;
};

SimpleConcept simple_from_json(const json &j) {
  SimpleConcept c;
  for (const auto &item : j.at("and")) {
    if (item.contains("name"))
      c.atom(item["name"].get<std::string>());
    else if (item.contains("bottom"))
      c.bottom = c.bottom || item["bottom"].get<bool>();
    else if (item.contains("prop")) {
      auto lo = item.at("lo").get<std::uint64_t>();
      auto hi = item.at("hi").get<std::uint64_t>();
      if (lo > kMaxEndpoint || hi > kMaxEndpoint)
        throw ParseError("integer out of range", 1, 1);
      c.interval(item["prop"].get<std::string>(), lo, hi);
    } else if (item.contains("some"))
      c.some(item["some"].get<std::string>(), simple_from_json(item.at("filler")));
    else
      throw ParseError("unknown concept node " + item.dump(), 1, 1);
  }
  return c;
}

json simple_to_json(const SimpleConcept &c) {
  json items = json::array();
  if (c.bottom)
    items.push_back({{"bottom", true}});
  for (const auto &a : c.atoms)
    items.push_back({{"name", a.value}});
  for (const auto &k : c.constraints)
    items.push_back({{"prop", k.prop.value}, {"lo", k.iv.lo}, {"hi", k.iv.hi}});
  for (const auto &r : c.restrictions)
    items.push_back({{"some", r.role.value}, {"filler", simple_to_json(r.filler)}});
  return json{{"and", items}};
}

} // namespace

PolicyDocument parse_policy_document(std::string_view text) {
  if (looks_like_json(text)) {
    json j = parse_json(text);
    return json_guard([&] {
      check_json_format(j);
      std::vector<SimpleConcept> ds;
      for (const auto &d : j.at("or"))
        ds.push_back(simple_from_json(d));
      if (ds.empty())
        throw ParseError("a union needs at least one disjunct", 1, 1);
      PolicyDocument doc{FullConcept(std::move(ds)), j.value("id", ""), j.value("label", "")};
      doc.policy.canonicalize();
      check_namespaces({}, signature_of(doc.policy));
      return doc;
    });
  }
  return PolicyParser(text).document();
}

FullConcept parse_policy(std::string_view text) { return parse_policy_document(text).policy; }

std::string to_string(const SimpleConcept &c) {
  if (c.bottom)
    return "bottom";
  if (c.is_top())
    return "top";
  std::string s;
  auto sep = [&] {
    if (!s.empty())
      s += " & ";
  };
  for (const auto &a : c.atoms) {
    sep();
    s += a.value;
  }
  for (const auto &k : c.constraints) {
    sep();
    s += k.prop.value + " in [" + std::to_string(k.iv.lo) + "," + std::to_string(k.iv.hi) + "]";
  }
  for (const auto &r : c.restrictions) {
    sep();
    s += "some " + r.role.value + " (" + to_string(r.filler) + ")";
  }
  return s;
}

std::string to_string(const FullConcept &c) {
  std::string s;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i)
      s += " | ";
    s += to_string(c[i]);
  }
  return s;
}

std::string to_string(const Axiom &ax) {
  return std::visit(
      [](const auto &a) -> std::string {
        using T = std::decay_t<decltype(a)>;
        if constexpr (std::is_same_v<T, Inclusion>)
          return "sub " + a.sub.value + " " + a.sup.value;
        else if constexpr (std::is_same_v<T, Disjoint>)
          return "disj " + a.a.value + " " + a.b.value;
        else if constexpr (std::is_same_v<T, Functional>)
          return (a.kind == SymbolKind::Any ? "func " : a.kind == SymbolKind::Role ? "func-role " : "func-prop ") +
                 a.symbol;
        else
          return "range " + a.role.value + " " + a.cls.value;
      },
      ax);
}

std::string serialize_kb(const KnowledgeBase &kb) {
  std::string s(kFormatHeader);
  s += "\n";
  for (const auto &ax : kb.axioms())
    s += to_string(ax) + "\n";
  return s;
}

std::string serialize_ontology(const ExternalOntology &o) {
  std::string s(kFormatHeader);
  s += "\n";
  for (const auto &ax : o.axioms())
    s += describe(ax) + "\n";
  return s;
}

std::string serialize_policy(const PolicyDocument &doc) {
  std::string s(kFormatHeader);
  s += "\n";
  if (!doc.id.empty())
    s += "@id \"" + doc.id + "\"\n";
  if (!doc.label.empty()) {
    std::string esc;
    for (char c : doc.label) {
      if (c == '"' || c == '\\')
        esc += '\\';
      esc += c;
    }
    s += "@label \"" + esc + "\"\n";
  }
  for (std::size_t i = 0; i < doc.policy.size(); ++i)
    s += (i ? "| " : "") + to_string(doc.policy[i]) + "\n";
  return s;
}

std::string serialize_policy(const FullConcept &c) { return serialize_policy(PolicyDocument{c, {}, {}}); }

std::string serialize_kb_json(const KnowledgeBase &kb) {
  json axioms = json::array();
  for (const auto &ax : kb.axioms()) {
    std::visit(
        [&](const auto &a) {
          using T = std::decay_t<decltype(a)>;
          if constexpr (std::is_same_v<T, Inclusion>)
            axioms.push_back({{"sub", {a.sub.value, a.sup.value}}});
          else if constexpr (std::is_same_v<T, Disjoint>)
            axioms.push_back({{"disj", {a.a.value, a.b.value}}});
          else if constexpr (std::is_same_v<T, Functional>)
            axioms.push_back({{a.kind == SymbolKind::Any    ? "func"
                               : a.kind == SymbolKind::Role ? "func_role"
                                                            : "func_prop",
                               a.symbol}});
          else
            axioms.push_back({{"range", {a.role.value, a.cls.value}}});
        },
        ax);
  }
  return json{{"format", kFormatHeader}, {"axioms", axioms}}.dump(2) + "\n";
}

std::string serialize_ontology_json(const ExternalOntology &o) {
  json axioms = json::array();
  for (const auto &ax : o.axioms()) {
    std::visit(
        [&](const auto &a) {
          using T = std::decay_t<decltype(a)>;
          if constexpr (std::is_same_v<T, OntSub>)
            axioms.push_back({{"sub", {a.sub.value, a.sup.value}}});
          else if constexpr (std::is_same_v<T, OntConjSub>)
            axioms.push_back({{"sub_conj", {names_json(a.lhs), a.sup.value}}});
          else if constexpr (std::is_same_v<T, OntSubEx>)
            axioms.push_back({{"sub_ex", {a.sub.value, a.role.value, a.filler.value}}});
          else if constexpr (std::is_same_v<T, OntExSub>)
            axioms.push_back({{"ex_sub", {a.role.value, a.filler.value, a.sup.value}}});
          else if constexpr (std::is_same_v<T, OntDisj>)
            axioms.push_back({{"disj", {a.a.value, a.b.value}}});
          else
            axioms.push_back({{"def", {a.name.value, names_json(a.conj)}}});
        },
        ax);
  }
  return json{{"format", kFormatHeader}, {"axioms", axioms}}.dump(2) + "\n";
}

std::string serialize_policy_json(const PolicyDocument &doc) {
  json ds = json::array();
  for (const auto &d : doc.policy.disjuncts())
    ds.push_back(simple_to_json(d));
  json j{{"format", kFormatHeader}};
  if (!doc.id.empty())
    j["id"] = doc.id;
  if (!doc.label.empty())
    j["label"] = doc.label;
  j["or"] = ds;
  return j.dump(2) + "\n";
}

std::string serialize_policy_json(const FullConcept &c) { return serialize_policy_json(PolicyDocument{c, {}, {}}); }

std::string read_file(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw Error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string &path, std::string_view content) {
  std::ofstream out(path, std::ios::binary);
  if (!out)
    throw Error("cannot write '" + path + "'");
  out << content;
}

} // namespace plr
