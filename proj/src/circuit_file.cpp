// Copyright 2026 The cavsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cavsim/circuit_file.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <map>
#include <numbers>
#include <optional>
#include <set>
#include <sstream>
#include <vector>

namespace cavsim {

ParseError::ParseError(const std::string &message, std::size_t line, std::size_t column)
    : std::runtime_error(message + ", line " + std::to_string(line) + ", column " +
                         std::to_string(column)),
      line_(line),
      column_(column) {}

namespace {

struct Token {
  std::string text;
  std::size_t column;  // 1-based
};

std::vector<Token> tokenize(std::string_view line) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    if (line[i] == '#') break;
    if (std::isspace(static_cast<unsigned char>(line[i]))) {
      ++i;
      continue;
    }
    const std::size_t start = i;
    while (i < line.size() && line[i] != '#' && !std::isspace(static_cast<unsigned char>(line[i]))) {
      ++i;
    }
    tokens.push_back({std::string(line.substr(start, i - start)), start + 1});
  }
  return tokens;
}

bool validName(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.';
  });
}

class LineParser {
 public:
  LineParser(std::size_t line, const std::set<std::string> &modes) : line_(line), modes_(modes) {}

  [[noreturn]] void fail(const std::string &message, std::size_t column) const {
    throw ParseError(message, line_, column);
  }

  std::size_t parseCount(const std::string &text, std::size_t column) const {
    std::size_t v = 0;
    const auto *end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, v);
    if (ec != std::errc() || ptr != end || text.empty()) {
      fail("expected a non-negative integer, got '" + text + "'", column);
    }
    return v;
  }

  Port parsePort(const std::string &text, std::size_t column, bool requireDeclared = true) const {
    Port p;
    const auto colon = text.find(':');
    p.mode = text.substr(0, colon);
    if (colon != std::string::npos) {
      const std::string dir = text.substr(colon + 1);
      if (dir == "against") {
        p.direction = Direction::AgainstZ;
      } else if (dir != "along") {
        fail("unknown direction '" + dir + "' (expected along or against)", column + colon + 1);
      }
    }
    if (!validName(p.mode)) fail("invalid mode name '" + p.mode + "'", column);
    if (requireDeclared && !modes_.contains(p.mode)) {
      fail("undeclared mode '" + p.mode + "'", column);
    }
    return p;
  }

  std::vector<Port> parsePorts(const std::string &text, std::size_t column) const {
    std::vector<Port> ports;
    std::size_t start = 0;
    for (;;) {
      const auto comma = text.find(',', start);
      const std::string item = text.substr(start, comma - start);
      if (item.empty()) fail("empty port in list", column + start);
      ports.push_back(parsePort(item, column + start));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    return ports;
  }

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
  const std::set<std::string> &modes_;
};

struct KeyValue {
  std::string value;
  std::size_t column;  // of the value
};

// Splits tokens[first..] into key=value options; rejects unknown and repeated keys.
std::map<std::string, KeyValue> options(const LineParser &lp, const std::vector<Token> &tokens,
                                        std::size_t first, const std::set<std::string> &allowed) {
  std::map<std::string, KeyValue> out;
  for (std::size_t i = first; i < tokens.size(); ++i) {
    const auto &t = tokens[i];
    const auto eq = t.text.find('=');
    if (eq == std::string::npos) lp.fail("expected key=value, got '" + t.text + "'", t.column);
    const std::string key = t.text.substr(0, eq);
    if (!allowed.contains(key)) lp.fail("unknown option '" + key + "'", t.column);
    if (out.contains(key)) lp.fail("repeated option '" + key + "'", t.column);
    out[key] = {t.text.substr(eq + 1), t.column + eq + 1};
  }
  return out;
}

const std::map<std::string, StageKind> &elementNames() {
  static const std::map<std::string, StageKind> names{
      {"pbs", StageKind::Pbs},         {"hwp", StageKind::Hwp},
      {"phase", StageKind::PhaseShift}, {"switch", StageKind::Switch},
      {"delay", StageKind::Delay},      {"hadamard-e", StageKind::SpinHadamard},
      {"interact", StageKind::Interact}};
  return names;
}

std::string elementName(StageKind kind) {
  for (const auto &[name, k] : elementNames()) {
    if (k == kind) return name;
  }
  return "?";
}

double parsePhase(const LineParser &lp, const Token &t) {
  if (t.text == "pi") return std::numbers::pi;
  if (t.text == "-pi") return -std::numbers::pi;
  std::istringstream in(t.text);
  double v = 0;
  in >> v;
  if (!in || !in.eof() || !std::isfinite(v)) {
    lp.fail("invalid phase '" + t.text + "' (expected pi, -pi or a number)", t.column);
  }
  return v;
}

StageSpec parseStage(const LineParser &lp, const std::vector<Token> &tokens,
                     std::size_t electrons) {
  const auto &head = tokens[0];
  const auto it = elementNames().find(head.text);
  if (it == elementNames().end()) lp.fail("unknown element '" + head.text + "'", head.column);
  StageSpec s;
  s.kind = it->second;

  const bool positional = s.kind == StageKind::PhaseShift || s.kind == StageKind::Switch ||
                          s.kind == StageKind::Interact;
  if (positional) {
    if (tokens.size() < 2 || tokens[1].text.find('=') != std::string::npos) {
      lp.fail("'" + head.text + "' needs a parameter", head.column + head.text.size());
    }
    const Token &arg = tokens[1];
    if (s.kind == StageKind::PhaseShift) {
      s.phase = parsePhase(lp, arg);
    } else if (s.kind == StageKind::Switch) {
      if (arg.text != "a" && arg.text != "b") lp.fail("switch route must be a or b", arg.column);
      s.selector = arg.text == "a" ? 0 : 1;
    } else {
      if (!validName(arg.text)) lp.fail("invalid cavity id '" + arg.text + "'", arg.column);
      s.cavityId = arg.text;
    }
  }

  const bool spinOp = s.kind == StageKind::SpinHadamard;
  const std::set<std::string> allowed =
      spinOp ? std::set<std::string>{"spin", "checkpoint"}
             : std::set<std::string>{"in", "out", "checkpoint"};
  auto opts = options(lp, tokens, positional ? 2 : 1, allowed);
  auto require = [&](const std::string &key) -> const KeyValue & {
    const auto f = opts.find(key);
    if (f == opts.end()) lp.fail("'" + head.text + "' needs " + key + "=", head.column);
    return f->second;
  };
  if (spinOp) {
    const auto &kv = require("spin");
    s.spinIndex = lp.parseCount(kv.value, kv.column);
    if (s.spinIndex >= electrons) lp.fail("spin index out of range", kv.column);
  } else {
    const auto &in = require("in");
    const auto &out = require("out");
    s.in = lp.parsePorts(in.value, in.column);
    s.out = lp.parsePorts(out.value, out.column);
  }
  if (const auto f = opts.find("checkpoint"); f != opts.end()) {
    if (!validName(f->second.value)) lp.fail("invalid checkpoint tag", f->second.column);
    s.checkpoint = f->second.value;
  }
  return s;
}

}  // namespace

CircuitSpec parseCircuitFile(std::string_view text) {
  CircuitSpec c;
  bool haveHeader = false, haveModes = false;
  std::optional<std::size_t> inputLine, outputLine;
  std::set<std::string> modes;
  std::vector<std::size_t> stageLines;

  std::size_t lineNo = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    std::string_view raw = text.substr(pos, nl == std::string_view::npos ? text.size() - pos
                                                                         : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++lineNo;
    if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);
    const auto tokens = tokenize(raw);
    if (tokens.empty()) continue;
    const LineParser lp(lineNo, modes);
    const Token &head = tokens[0];

    if (!haveHeader) {
      if (head.text != "circuit") lp.fail("expected 'circuit <name> electrons=<n>'", head.column);
      if (tokens.size() != 3) lp.fail("expected 'circuit <name> electrons=<n>'", head.column);
      if (!validName(tokens[1].text)) lp.fail("invalid circuit name", tokens[1].column);
      c.name = tokens[1].text;
      const auto opts = options(lp, tokens, 2, {"electrons"});
      const auto &kv = opts.at("electrons");
      c.electronCount = lp.parseCount(kv.value, kv.column);
      if (c.electronCount == 0) lp.fail("electrons must be >= 1", kv.column);
      haveHeader = true;
      continue;
    }
    if (head.text == "circuit") lp.fail("repeated circuit header", head.column);
    if (head.text == "modes") {
      if (haveModes) lp.fail("repeated modes line", head.column);
      if (tokens.size() != 2) lp.fail("expected 'modes <m1>,<m2>,...'", head.column);
      std::size_t start = 0;
      const std::string &list = tokens[1].text;
      for (;;) {
        const auto comma = list.find(',', start);
        const std::string m = list.substr(start, comma - start);
        if (!validName(m)) lp.fail("invalid mode name '" + m + "'", tokens[1].column + start);
        if (!modes.insert(m).second) {
          lp.fail("mode '" + m + "' declared twice", tokens[1].column + start);
        }
        c.modes.push_back(m);
        if (comma == std::string::npos) break;
        start = comma + 1;
      }
      haveModes = true;
      continue;
    }
    if (head.text == "cavity") {
      if (tokens.size() != 3 || !validName(tokens[1].text)) {
        lp.fail("expected 'cavity <id> spin=<i>'", head.column);
      }
      const auto opts = options(lp, tokens, 2, {"spin"});
      const auto &kv = opts.at("spin");
      CavityDeclaration d{tokens[1].text, lp.parseCount(kv.value, kv.column)};
      if (d.spinIndex >= c.electronCount) lp.fail("spin index out of range", kv.column);
      if (std::any_of(c.cavities.begin(), c.cavities.end(),
                      [&](const auto &e) { return e.id == d.id; })) {
        lp.fail("cavity '" + d.id + "' declared twice", tokens[1].column);
      }
      c.cavities.push_back(std::move(d));
      continue;
    }
    if (head.text == "input" || head.text == "output") {
      auto &seen = head.text == "input" ? inputLine : outputLine;
      if (seen) lp.fail("repeated " + head.text + " line", head.column);
      if (tokens.size() != 2) lp.fail("expected '" + head.text + " <port>'", head.column);
      (head.text == "input" ? c.input : c.output) = lp.parsePort(tokens[1].text, tokens[1].column);
      seen = lineNo;
      continue;
    }
    if (!haveModes && elementNames().contains(head.text)) {
      lp.fail("stage before the modes line", head.column);
    }
    StageSpec s = parseStage(lp, tokens, c.electronCount);
    if (s.kind == StageKind::Interact &&
        std::none_of(c.cavities.begin(), c.cavities.end(),
                     [&](const auto &d) { return d.id == s.cavityId; })) {
      lp.fail("undeclared cavity '" + s.cavityId + "'", tokens[1].column);
    }
    c.stages.push_back(std::move(s));
    stageLines.push_back(lineNo);
  }

  if (!haveHeader) throw ParseError("missing circuit header", lineNo, 1);
  if (!haveModes) throw ParseError("missing modes line", lineNo, 1);
  if (!inputLine) throw ParseError("missing input line", lineNo, 1);
  if (!outputLine) throw ParseError("missing output line", lineNo, 1);

  try {
    validate(c);
  } catch (const CircuitError &e) {
    // Locate the first stage whose prefix no longer validates.
    CircuitSpec prefix = c;
    prefix.stages.clear();
    for (std::size_t k = 0; k < c.stages.size(); ++k) {
      prefix.stages.push_back(c.stages[k]);
      try {
        validate(prefix);
      } catch (const CircuitError &inner) {
        throw ParseError(inner.what(), stageLines[k], 1);
      }
    }
    throw ParseError(e.what(), lineNo, 1);
  }
  return c;
}

namespace {

std::string portText(const Port &p) {
  return p.direction == Direction::AgainstZ ? p.mode + ":against" : p.mode;
}

std::string portList(const std::vector<Port> &ports) {
  std::string s;
  for (std::size_t i = 0; i < ports.size(); ++i) {
    if (i > 0) s += ',';
    s += portText(ports[i]);
  }
  return s;
}

std::string phaseText(double phase) {
  if (phase == std::numbers::pi) return "pi";
  if (phase == -std::numbers::pi) return "-pi";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", phase);
  return buf;
}

}  // namespace

std::string emitCircuitFile(const CircuitSpec &c) {
  std::ostringstream out;
  out << "circuit " << c.name << " electrons=" << c.electronCount << '\n';
  out << "modes ";
  for (std::size_t i = 0; i < c.modes.size(); ++i) out << (i > 0 ? "," : "") << c.modes[i];
  out << '\n';
  for (const auto &d : c.cavities) out << "cavity " << d.id << " spin=" << d.spinIndex << '\n';
  out << "input " << portText(c.input) << '\n';
  out << "output " << portText(c.output) << '\n';
  out << '\n';
  for (const auto &s : c.stages) {
    out << elementName(s.kind);
    switch (s.kind) {
      case StageKind::PhaseShift: out << ' ' << phaseText(s.phase); break;
      case StageKind::Switch: out << ' ' << (s.selector == 0 ? 'a' : 'b'); break;
      case StageKind::Interact: out << ' ' << s.cavityId; break;
      default: break;
    }
    if (s.kind == StageKind::SpinHadamard) {
      out << " spin=" << s.spinIndex;
    } else {
      out << " in=" << portList(s.in) << " out=" << portList(s.out);
    }
    if (!s.checkpoint.empty()) out << " checkpoint=" << s.checkpoint;
    out << '\n';
  }
  return out.str();
}

}  // namespace cavsim
