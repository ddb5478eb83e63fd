// Copyright 2026 The ttrans Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "ttrans/io.hpp"

#include <algorithm>

#include "lexer.hpp"

namespace ttrans {

namespace {

using detail::Lexer;
using detail::Token;

int parse_int(Lexer& lex, const std::string& what) {
  Token tok = lex.peek();
  std::string text = lex.expect_name(what);
  if (text.empty() || text.find_first_not_of("0123456789") != std::string::npos)
    throw ParseError("expected " + what + ", got '" + text + "'", tok.line, tok.col);
  return std::stoi(text);
}

RankedAlphabet parse_alphabet_block(Lexer& lex) {
  RankedAlphabet out;
  lex.expect('{');
  while (!lex.accept('}')) {
    Token tok = lex.peek();
    std::string name = lex.expect_name("a symbol name");
    lex.expect('/');
    int rank = parse_int(lex, "a rank");
    try {
      out.add(Symbol{name, rank});
    } catch (const ValidationError& e) {
      throw ParseError(e.what(), tok.line, tok.col);
    }
  }
  return out;
}

std::vector<std::string> parse_name_block(Lexer& lex) {
  std::vector<std::string> out;
  lex.expect('{');
  while (!lex.accept('}')) out.push_back(lex.expect_name("a name"));
  return out;
}

std::optional<int> var_index_of(const std::string& name) {
  if (name.size() < 2 || name[0] != 'x') return std::nullopt;
  for (std::size_t i = 1; i < name.size(); ++i)
    if (name[i] < '0' || name[i] > '9') return std::nullopt;
  if (name[1] == '0') return std::nullopt;
  return std::stoi(name.substr(1));
}

Tree parse_mtt_rhs(Lexer& lex, const Mtt& m) {
  Token tok = lex.peek();
  std::string name = lex.expect_name("a right-hand-side symbol");
  if (lex.accept('[')) {
    Token vtok = lex.peek();
    std::string var = lex.expect_name("an input variable");
    auto idx = var_index_of(var);
    if (!idx) throw ParseError("expected x<i>, got '" + var + "'", vtok.line, vtok.col);
    lex.expect(']');
    int state = m.state_index(name);
    if (state < 0) throw ParseError("unknown state '" + name + "'", tok.line, tok.col);
    const State& q = m.states[static_cast<std::size_t>(state)];
    std::vector<Tree> args;
    if (lex.accept('(')) {
      if (!lex.accept(')')) {
        do {
          args.push_back(parse_mtt_rhs(lex, m));
        } while (lex.accept(','));
        lex.expect(')');
      }
    }
    if (static_cast<int>(args.size()) != q.rank)
      throw ParseError("state '" + name + "' has rank " + std::to_string(q.rank) + " but " +
                           std::to_string(args.size()) + " arguments",
                       tok.line, tok.col);
    return Tree(call_symbol(q, *idx), std::move(args));
  }
  std::vector<Tree> args;
  if (lex.accept('(')) {
    if (!lex.accept(')')) {
      do {
        args.push_back(parse_mtt_rhs(lex, m));
      } while (lex.accept(','));
      lex.expect(')');
    }
  }
  if (param_index(Symbol{name, 0}) && !args.empty())
    throw ParseError("parameter '" + name + "' cannot take arguments", tok.line, tok.col);
  int rank = static_cast<int>(args.size());
  return Tree(Symbol{name, rank}, std::move(args));
}

}  // namespace

Mtt parse_mtt(const std::string& text) {
  Lexer lex(text);
  if (!lex.accept_keyword("mtt")) lex.fail("expected 'mtt'");
  Mtt m;
  if (!lex.at('{')) m.name = lex.expect_name("a transducer name");
  lex.expect('{');
  if (!lex.accept_keyword("input")) lex.fail("expected 'input'");
  m.input = parse_alphabet_block(lex);
  if (!lex.accept_keyword("output")) lex.fail("expected 'output'");
  m.output = parse_alphabet_block(lex);
  if (!lex.accept_keyword("states")) lex.fail("expected 'states'");
  {
    lex.expect('{');
    while (!lex.accept('}')) {
      std::string name = lex.expect_name("a state name");
      lex.expect('/');
      int rank = parse_int(lex, "a rank");
      m.states.push_back(State{name, rank});
    }
  }
  if (!lex.accept_keyword("initial")) lex.fail("expected 'initial'");
  m.initial = lex.expect_name("the initial state");

  while (lex.accept_keyword("rule")) {
    Token tok = lex.peek();
    std::string state = lex.expect_name("a state name");
    int q = m.state_index(state);
    if (q < 0) throw ParseError("unknown state '" + state + "'", tok.line, tok.col);
    Token stok = lex.peek();
    std::string symbol = lex.expect_name("an input symbol");
    int sym = m.input.index_of(symbol);
    if (sym < 0) throw ParseError("unknown input symbol '" + symbol + "'", stok.line, stok.col);

    // Up to two parenthesized groups: input variables then parameters;
    // either may be omitted when empty (they are disjoint namespaces).
    int groups = 0;
    int seen_vars = -1, seen_params = -1;
    while (groups < 2 && lex.at('(')) {
      // To know which group this is, look at the first name inside.
      lex.expect('(');
      if (lex.accept(')')) {
        ++groups;
        continue;
      }
      Token first = lex.peek();
      std::vector<std::string> names;
      do {
        names.push_back(lex.expect_name("a variable"));
      } while (lex.accept(','));
      lex.expect(')');
      ++groups;
      bool vars = var_index_of(names[0]).has_value();
      for (std::size_t i = 0; i < names.size(); ++i) {
        auto idx = vars ? var_index_of(names[i]) : param_index(Symbol{names[i], 0});
        if (!idx || *idx != static_cast<int>(i) + 1)
          throw ParseError(std::string("expected ") + (vars ? "x" : "y") +
                               std::to_string(i + 1) + " in the rule header",
                           first.line, first.col);
      }
      if (vars)
        seen_vars = static_cast<int>(names.size());
      else
        seen_params = static_cast<int>(names.size());
    }
    const Symbol& s = m.input.at(static_cast<std::size_t>(sym));
    const State& st = m.states[static_cast<std::size_t>(q)];
    if (seen_vars >= 0 && seen_vars != s.rank)
      throw ParseError("rule header lists " + std::to_string(seen_vars) +
                           " input variables, symbol rank is " + std::to_string(s.rank),
                       tok.line, tok.col);
    if (seen_params >= 0 && seen_params != st.rank)
      throw ParseError("rule header lists " + std::to_string(seen_params) +
                           " parameters, state rank is " + std::to_string(st.rank),
                       tok.line, tok.col);

    lex.expect_arrow();
    Tree rhs = parse_mtt_rhs(lex, m);
    if (!m.rules.emplace(std::make_pair(q, sym), rhs).second)
      throw ParseError("duplicate rule (" + state + ", " + symbol + ")", tok.line, tok.col);
  }
  lex.expect('}');
  if (!lex.at_end()) lex.fail("trailing input after 'mtt' block");
  return m;
}

namespace {

Tree parse_att_rhs(Lexer& lex, const Att& a) {
  Token tok = lex.peek();
  std::string name = lex.expect_name("a right-hand-side symbol");
  if (lex.at('(')) {
    lex.expect('(');
    if (lex.at_name("pi")) {
      lex.next();
      if (lex.accept(')')) {
        if (!a.is_inh(name))
          throw ParseError("'" + name + "' is not an inherited attribute", tok.line, tok.col);
        return Tree(inh_ref(name));
      }
      int child = parse_int(lex, "a child index");
      lex.expect(')');
      if (!a.is_syn(name))
        throw ParseError("'" + name + "' is not a synthesized attribute", tok.line, tok.col);
      return Tree(syn_ref(name, child));
    }
    std::vector<Tree> args;
    if (!lex.accept(')')) {
      do {
        args.push_back(parse_att_rhs(lex, a));
      } while (lex.accept(','));
      lex.expect(')');
    }
    int rank = static_cast<int>(args.size());
    return Tree(Symbol{name, rank}, std::move(args));
  }
  return Tree(Symbol{name, 0});
}

}  // namespace

Att parse_att(const std::string& text) {
  Lexer lex(text);
  if (!lex.accept_keyword("att")) lex.fail("expected 'att'");
  Att a;
  if (!lex.at('{')) a.name = lex.expect_name("a transducer name");
  lex.expect('{');
  if (!lex.accept_keyword("input")) lex.fail("expected 'input'");
  a.input = parse_alphabet_block(lex);
  if (!lex.accept_keyword("output")) lex.fail("expected 'output'");
  a.output = parse_alphabet_block(lex);
  if (!lex.accept_keyword("syn")) lex.fail("expected 'syn'");
  a.syn = parse_name_block(lex);
  if (!lex.accept_keyword("inh")) lex.fail("expected 'inh'");
  a.inh = parse_name_block(lex);
  if (!lex.accept_keyword("root")) lex.fail("expected 'root'");
  a.root = lex.expect_name("the output attribute");

  while (lex.accept_keyword("at")) {
    Token stok = lex.peek();
    std::string symbol = lex.expect_name("an input symbol");
    lex.expect('/');
    int rank = parse_int(lex, "a rank");
    int sym = a.input.index_of(symbol);
    if (sym < 0) throw ParseError("unknown input symbol '" + symbol + "'", stok.line, stok.col);
    if (a.input.at(static_cast<std::size_t>(sym)).rank != rank)
      throw ParseError("symbol '" + symbol + "' declared with rank " +
                           std::to_string(a.input.at(static_cast<std::size_t>(sym)).rank),
                       stok.line, stok.col);
    lex.expect('{');
    while (!lex.accept('}')) {
      Token atok = lex.peek();
      std::string attr = lex.expect_name("an attribute");
      lex.expect('(');
      if (!lex.accept_keyword("pi")) lex.fail("expected 'pi'");
      int child = 0;
      if (!lex.at(')')) child = parse_int(lex, "a child index");
      lex.expect(')');
      lex.expect_arrow();
      Tree rhs = parse_att_rhs(lex, a);
      if (!a.rules[sym].emplace(AttRuleKey{attr, child}, rhs).second)
        throw ParseError("duplicate rule for " + attr + " at '" + symbol + "'", atok.line,
                         atok.col);
      if (!lex.accept(';') && !lex.at('}'))
        lex.fail("expected ';' or '}' after an attribute rule");
    }
  }
  lex.expect('}');
  if (!lex.at_end()) lex.fail("trailing input after 'att' block");
  return a;
}

Brel parse_brel(const std::string& text) {
  Lexer lex(text);
  if (!lex.accept_keyword("brel")) lex.fail("expected 'brel'");
  Brel b;
  if (!lex.at('{')) b.name = lex.expect_name("a transducer name");
  lex.expect('{');
  if (!lex.accept_keyword("input")) lex.fail("expected 'input'");
  b.input = parse_alphabet_block(lex);
  if (!lex.accept_keyword("output")) lex.fail("expected 'output'");
  b.output = parse_alphabet_block(lex);
  if (!lex.accept_keyword("states")) lex.fail("expected 'states'");
  b.states = parse_name_block(lex);

  while (lex.accept_keyword("rule")) {
    Token stok = lex.peek();
    std::string symbol = lex.expect_name("an input symbol");
    int sym = b.input.index_of(symbol);
    if (sym < 0) throw ParseError("unknown input symbol '" + symbol + "'", stok.line, stok.col);
    std::vector<int> children;
    if (lex.accept('(')) {
      if (!lex.accept(')')) {
        do {
          Token ptok = lex.peek();
          std::string p = lex.expect_name("a state");
          int pi = b.state_index(p);
          if (pi < 0) throw ParseError("unknown state '" + p + "'", ptok.line, ptok.col);
          children.push_back(pi);
        } while (lex.accept(','));
        lex.expect(')');
      }
    }
    lex.expect_arrow();
    Token ttok = lex.peek();
    std::string target = lex.expect_name("a state");
    int ti = b.state_index(target);
    if (ti < 0) throw ParseError("unknown state '" + target + "'", ttok.line, ttok.col);
    lex.expect(':');
    Token otok = lex.peek();
    std::string out_name = lex.expect_name("an output symbol");
    int oi = b.output.index_of(out_name);
    if (oi < 0)
      throw ParseError("unknown output symbol '" + out_name + "'", otok.line, otok.col);
    if (!b.rules.emplace(std::make_pair(sym, children), std::make_pair(ti, oi)).second)
      throw ParseError("duplicate rule for '" + symbol + "'", stok.line, stok.col);
  }
  lex.expect('}');
  if (!lex.at_end()) lex.fail("trailing input after 'brel' block");
  return b;
}

Trel parse_trel(const std::string& text) {
  Lexer lex(text);
  if (!lex.accept_keyword("trel")) lex.fail("expected 'trel'");
  Trel t;
  if (!lex.at('{')) t.name = lex.expect_name("a transducer name");
  lex.expect('{');
  if (!lex.accept_keyword("input")) lex.fail("expected 'input'");
  t.input = parse_alphabet_block(lex);
  if (!lex.accept_keyword("output")) lex.fail("expected 'output'");
  t.output = parse_alphabet_block(lex);
  if (!lex.accept_keyword("states")) lex.fail("expected 'states'");
  t.states = parse_name_block(lex);
  if (!lex.accept_keyword("initial")) lex.fail("expected 'initial'");
  t.initial = lex.expect_name("the initial state");

  while (lex.accept_keyword("rule")) {
    Token qtok = lex.peek();
    std::string state = lex.expect_name("a state");
    int q = t.state_index(state);
    if (q < 0) throw ParseError("unknown state '" + state + "'", qtok.line, qtok.col);
    Token stok = lex.peek();
    std::string symbol = lex.expect_name("an input symbol");
    int sym = t.input.index_of(symbol);
    if (sym < 0) throw ParseError("unknown input symbol '" + symbol + "'", stok.line, stok.col);
    lex.expect_arrow();
    Token otok = lex.peek();
    std::string out_name = lex.expect_name("an output symbol");
    int oi = t.output.index_of(out_name);
    if (oi < 0)
      throw ParseError("unknown output symbol '" + out_name + "'", otok.line, otok.col);
    std::vector<int> children;
    if (lex.accept('(')) {
      if (!lex.accept(')')) {
        do {
          Token ptok = lex.peek();
          std::string p = lex.expect_name("a state");
          int pi = t.state_index(p);
          if (pi < 0) throw ParseError("unknown state '" + p + "'", ptok.line, ptok.col);
          children.push_back(pi);
        } while (lex.accept(','));
        lex.expect(')');
      }
    }
    if (!t.rules.emplace(std::make_pair(q, sym), std::make_pair(oi, children)).second)
      throw ParseError("duplicate rule (" + state + ", " + symbol + ")", qtok.line, qtok.col);
  }
  lex.expect('}');
  if (!lex.at_end()) lex.fail("trailing input after 'trel' block");
  return t;
}

Stage parse_stage(const std::string& text) {
  Lexer lex(text);
  if (lex.at_name("mtt")) return parse_mtt(text);
  if (lex.at_name("att")) return parse_att(text);
  if (lex.at_name("brel")) return parse_brel(text);
  if (lex.at_name("trel")) return parse_trel(text);
  lex.fail("expected one of 'mtt', 'att', 'brel', 'trel'");
}

namespace {

std::string print_alphabet(const RankedAlphabet& a) {
  std::string out = "{";
  for (const auto& s : a.symbols()) out += " " + format_name(s.name) + "/" + std::to_string(s.rank);
  out += " }";
  return out;
}

std::string header_comments(const std::vector<std::string>& header) {
  std::string out;
  for (const auto& line : header) out += "// " + line + "\n";
  return out;
}

}  // namespace

std::string print_mtt_rhs(const Mtt& m, const Tree& rhs) {
  std::string out;
  if (auto call = parse_call(rhs.label(), m)) {
    out = format_name(m.state_at(call->state).name) + "[" +
          (call->var == 0 ? "x" : var_name(call->var)) + "]";
  } else {
    out = format_name(rhs.label().name);
  }
  if (!rhs.children().empty()) {
    out += '(';
    for (std::size_t i = 0; i < rhs.children().size(); ++i) {
      if (i) out += ',';
      out += print_mtt_rhs(m, rhs.children()[i]);
    }
    out += ')';
  }
  return out;
}

std::string print_mtt(const Mtt& m, const std::vector<std::string>& header) {
  std::string out = header_comments(header);
  out += "mtt" + (m.name.empty() ? "" : " " + format_name(m.name)) + " {\n";
  out += "  input " + print_alphabet(m.input) + "\n";
  out += "  output " + print_alphabet(m.output) + "\n";
  out += "  states {";
  for (const auto& q : m.states) out += " " + format_name(q.name) + "/" + std::to_string(q.rank);
  out += " }\n";
  out += "  initial " + format_name(m.initial) + "\n";
  for (const auto& [key, rhs] : m.rules) {
    const State& q = m.state_at(key.first);
    const Symbol& s = m.input.at(static_cast<std::size_t>(key.second));
    out += "  rule " + format_name(q.name) + " " + format_name(s.name);
    if (s.rank > 0) {
      out += "(";
      for (int i = 1; i <= s.rank; ++i) out += (i > 1 ? "," : "") + var_name(i);
      out += ")";
    }
    if (q.rank > 0) {
      out += "(";
      for (int j = 1; j <= q.rank; ++j)
        out += (j > 1 ? "," : "") + param_symbol(j).name;
      out += ")";
    }
    out += " -> " + print_mtt_rhs(m, rhs) + "\n";
  }
  out += "}\n";
  return out;
}

std::string print_att_rhs(const Att& a, const Tree& rhs) {
  if (auto ref = parse_ref(rhs.label(), a)) {
    if (ref->child == 0) return format_name(ref->attr) + "(pi)";
    return format_name(ref->attr) + "(pi " + std::to_string(ref->child) + ")";
  }
  std::string out = format_name(rhs.label().name);
  if (!rhs.children().empty()) {
    out += '(';
    for (std::size_t i = 0; i < rhs.children().size(); ++i) {
      if (i) out += ',';
      out += print_att_rhs(a, rhs.children()[i]);
    }
    out += ')';
  }
  return out;
}

std::string print_att(const Att& a, const std::vector<std::string>& header) {
  std::string out = header_comments(header);
  out += "att" + (a.name.empty() ? "" : " " + format_name(a.name)) + " {\n";
  out += "  input " + print_alphabet(a.input) + "\n";
  out += "  output " + print_alphabet(a.output) + "\n";
  out += "  syn {";
  for (const auto& s : a.syn) out += " " + format_name(s);
  out += " }\n  inh {";
  for (const auto& s : a.inh) out += " " + format_name(s);
  out += " }\n";
  out += "  root " + format_name(a.root) + "\n";
  for (const auto& [sym, rules] : a.rules) {
    const Symbol& s = a.input.at(static_cast<std::size_t>(sym));
    out += "  at " + format_name(s.name) + "/" + std::to_string(s.rank) + " {\n";
    for (const auto& [key, rhs] : rules) {
      out += "    " + format_name(key.attr) +
             (key.child == 0 ? "(pi)" : "(pi " + std::to_string(key.child) + ")");
      out += " -> " + print_att_rhs(a, rhs) + " ;\n";
    }
    out += "  }\n";
  }
  out += "}\n";
  return out;
}

std::string print_brel(const Brel& b, const std::vector<std::string>& header) {
  std::string out = header_comments(header);
  out += "brel" + (b.name.empty() ? "" : " " + format_name(b.name)) + " {\n";
  out += "  input " + print_alphabet(b.input) + "\n";
  out += "  output " + print_alphabet(b.output) + "\n";
  out += "  states {";
  for (const auto& p : b.states) out += " " + format_name(p);
  out += " }\n";
  for (const auto& [key, target] : b.rules) {
    const Symbol& s = b.input.at(static_cast<std::size_t>(key.first));
    out += "  rule " + format_name(s.name) + "(";
    for (std::size_t i = 0; i < key.second.size(); ++i)
      out += (i ? "," : "") + format_name(b.states[static_cast<std::size_t>(key.second[i])]);
    out += ") -> " + format_name(b.states[static_cast<std::size_t>(target.first)]) + " : " +
           format_name(b.output.at(static_cast<std::size_t>(target.second)).name) + "\n";
  }
  out += "}\n";
  return out;
}

std::string print_trel(const Trel& t, const std::vector<std::string>& header) {
  std::string out = header_comments(header);
  out += "trel" + (t.name.empty() ? "" : " " + format_name(t.name)) + " {\n";
  out += "  input " + print_alphabet(t.input) + "\n";
  out += "  output " + print_alphabet(t.output) + "\n";
  out += "  states {";
  for (const auto& q : t.states) out += " " + format_name(q);
  out += " }\n";
  out += "  initial " + format_name(t.initial) + "\n";
  for (const auto& [key, target] : t.rules) {
    out += "  rule " + format_name(t.states[static_cast<std::size_t>(key.first)]) + " " +
           format_name(t.input.at(static_cast<std::size_t>(key.second)).name) + " -> " +
           format_name(t.output.at(static_cast<std::size_t>(target.first)).name);
    if (!target.second.empty()) {
      out += " (";
      for (std::size_t i = 0; i < target.second.size(); ++i)
        out += (i ? "," : "") + format_name(t.states[static_cast<std::size_t>(target.second[i])]);
      out += ")";
    }
    out += "\n";
  }
  out += "}\n";
  return out;
}

std::string print_stage(const Stage& s, const std::vector<std::string>& header) {
  struct Print {
    const std::vector<std::string>& header;
    std::string operator()(const Brel& b) { return print_brel(b, header); }
    std::string operator()(const Trel& t) { return print_trel(t, header); }
    std::string operator()(const Mtt& m) { return print_mtt(m, header); }
    std::string operator()(const Att& a) { return print_att(a, header); }
  };
  return std::visit(Print{header}, s);
}

ParamRenaming parse_rho(const std::string& text) {
  Lexer lex(text);
  ParamRenaming rho;
  while (!lex.at_end()) {
    std::string state = lex.expect_name("a state name");
    int j = parse_int(lex, "a parameter index");
    lex.expect_arrow();
    int target = parse_int(lex, "a target index");
    rho.set(state, j, target);
  }
  return rho;
}

std::string print_rho(const ParamRenaming& rho) {
  std::string out;
  for (const auto& [key, target] : rho.entries())
    out += format_name(key.first) + " " + std::to_string(key.second) + " -> " +
           std::to_string(target) + "\n";
  return out;
}

}  // namespace ttrans
