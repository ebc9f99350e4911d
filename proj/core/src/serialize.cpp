#include "ftqc/serialize.hpp"

#include <cstdio>
#include <cstring>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace ftqc {

namespace {

std::string hexf(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%a", v);
  return buf;
}

double parse_hexf(const std::string& s) {
  char* end = nullptr;
  double v = std::strtod(s.c_str(), &end);
  if (end == s.c_str()) throw std::runtime_error("bad float literal: " + s);
  return v;
}

const char* assign_op_name(AssignOp op) {
  switch (op) {
    case AssignOp::Copy: return "copy";
    case AssignOp::Xor: return "xor";
    case AssignOp::Const: return "const";
    case AssignOp::Decode7: return "decode7";
    case AssignOp::Random: return "random";
  }
  return "?";
}

AssignOp assign_op_parse(const std::string& s) {
  if (s == "copy") return AssignOp::Copy;
  if (s == "xor") return AssignOp::Xor;
  if (s == "const") return AssignOp::Const;
  if (s == "decode7") return AssignOp::Decode7;
  if (s == "random") return AssignOp::Random;
  throw std::runtime_error("bad assign op: " + s);
}

void emit_when(std::ostringstream& os,
               const std::vector<std::pair<int, int>>& when) {
  os << "(";
  for (size_t i = 0; i < when.size(); ++i) {
    if (i) os << " ";
    os << when[i].first << "=" << when[i].second;
  }
  os << ")";
}

void emit_instrs(std::ostringstream& os, const std::vector<Instruction>& v,
                 int indent) {
  std::string pad(indent * 2, ' ');
  for (const auto& in : v) {
    os << pad;
    switch (in.kind) {
      case InstrKind::Gate:
        os << "gate " << gate_name(in.gate);
        if (gate_has_param(in.gate)) os << " " << hexf(in.param);
        for (int q : in.qubits) os << " " << q;
        break;
      case InstrKind::Measure:
        os << "measure " << in.qubits[0] << " -> " << in.bits[0];
        break;
      case InstrKind::Reset:
        os << "reset " << in.qubits[0];
        break;
      case InstrKind::Assign:
        os << "assign " << in.dest_bit << " = " << assign_op_name(in.assign_op);
        if (in.assign_op == AssignOp::Const) os << " " << in.const_val;
        for (int b : in.bits) os << " " << b;
        break;
      case InstrKind::Cond:
        os << "cond ";
        emit_when(os, in.when);
        os << " {\n";
        emit_instrs(os, in.body, indent + 1);
        os << pad << "}";
        break;
      case InstrKind::Rus:
        os << "rus " << in.rus_limit << " ";
        emit_when(os, in.when);
        os << " {\n";
        emit_instrs(os, in.body, indent + 1);
        os << pad << "}";
        break;
      case InstrKind::Barrier:
        os << "barrier";
        if (!in.label.empty()) os << " @" << in.label;
        for (int q : in.qubits) os << " " << q;
        break;
      case InstrKind::NoiseMarker:
        os << "noise " << in.label << " " << hexf(in.param);
        for (int q : in.qubits) os << " " << q;
        break;
      case InstrKind::IdealPrepZero:
        os << "ideal_prep_zero";
        for (int q : in.qubits) os << " " << q;
        break;
    }
    os << "\n";
  }
}

struct Parser {
  std::vector<std::string> lines;
  size_t pos = 0;

  static std::vector<std::string> tokenize(const std::string& line) {
    std::vector<std::string> t;
    std::istringstream is(line);
    std::string w;
    while (is >> w) t.push_back(w);
    return t;
  }

  std::vector<std::pair<int, int>> parse_when(std::vector<std::string>& toks,
                                              size_t* i) {
    std::vector<std::pair<int, int>> when;
    if (*i >= toks.size() || toks[*i].front() != '(')
      throw std::runtime_error("expected predicate");
    bool done = false;
    for (; *i < toks.size() && !done; ++(*i)) {
      std::string w = toks[*i];
      if (w.front() == '(') w = w.substr(1);
      if (!w.empty() && w.back() == ')') {
        w.pop_back();
        done = true;
      }
      if (w.empty()) continue;
      auto eq = w.find('=');
      if (eq == std::string::npos) throw std::runtime_error("bad predicate");
      when.emplace_back(std::stoi(w.substr(0, eq)), std::stoi(w.substr(eq + 1)));
    }
    if (!done) throw std::runtime_error("unterminated predicate");
    return when;
  }

  std::vector<Instruction> parse_block() {
    std::vector<Instruction> out;
    while (pos < lines.size()) {
      auto toks = tokenize(lines[pos]);
      ++pos;
      if (toks.empty()) continue;
      if (toks[0] == "}") return out;
      Instruction in;
      if (toks[0] == "gate") {
        in.kind = InstrKind::Gate;
        if (toks.size() < 2 || !gate_name_lookup(toks[1], &in.gate))
          throw std::runtime_error("unknown gate in: " + lines[pos - 1]);
        size_t i = 2;
        if (gate_has_param(in.gate)) in.param = parse_hexf(toks[i++]);
        for (; i < toks.size(); ++i) in.qubits.push_back(std::stoi(toks[i]));
      } else if (toks[0] == "measure") {
        in.kind = InstrKind::Measure;
        if (toks.size() != 4 || toks[2] != "->")
          throw std::runtime_error("bad measure line");
        in.qubits = {std::stoi(toks[1])};
        in.bits = {std::stoi(toks[3])};
      } else if (toks[0] == "reset") {
        in.kind = InstrKind::Reset;
        in.qubits = {std::stoi(toks.at(1))};
      } else if (toks[0] == "assign") {
        in.kind = InstrKind::Assign;
        if (toks.size() < 4 || toks[2] != "=")
          throw std::runtime_error("bad assign line");
        in.dest_bit = std::stoi(toks[1]);
        in.assign_op = assign_op_parse(toks[3]);
        size_t i = 4;
        if (in.assign_op == AssignOp::Const) in.const_val = std::stoi(toks[i++]);
        for (; i < toks.size(); ++i) in.bits.push_back(std::stoi(toks[i]));
      } else if (toks[0] == "cond" || toks[0] == "rus") {
        size_t i = 1;
        if (toks[0] == "rus") {
          in.kind = InstrKind::Rus;
          in.rus_limit = std::stoi(toks.at(i++));
        } else {
          in.kind = InstrKind::Cond;
        }
        in.when = parse_when(toks, &i);
        if (i >= toks.size() || toks[i] != "{")
          throw std::runtime_error("expected { after predicate");
        in.body = parse_block();
      } else if (toks[0] == "barrier") {
        in.kind = InstrKind::Barrier;
        size_t i = 1;
        if (i < toks.size() && toks[i].front() == '@')
          in.label = toks[i++].substr(1);
        for (; i < toks.size(); ++i) in.qubits.push_back(std::stoi(toks[i]));
      } else if (toks[0] == "noise") {
        in.kind = InstrKind::NoiseMarker;
        in.label = toks.at(1);
        in.param = parse_hexf(toks.at(2));
        for (size_t i = 3; i < toks.size(); ++i)
          in.qubits.push_back(std::stoi(toks[i]));
      } else if (toks[0] == "ideal_prep_zero") {
        in.kind = InstrKind::IdealPrepZero;
        for (size_t i = 1; i < toks.size(); ++i)
          in.qubits.push_back(std::stoi(toks[i]));
      } else {
        throw std::runtime_error("unknown directive: " + toks[0]);
      }
      out.push_back(std::move(in));
    }
    return out;
  }
};

using json = nlohmann::json;

json when_to_json(const std::vector<std::pair<int, int>>& when) {
  json a = json::array();
  for (auto& [b, v] : when) a.push_back({{"bit", b}, {"value", v}});
  return a;
}

std::vector<std::pair<int, int>> when_from_json(const json& a) {
  std::vector<std::pair<int, int>> when;
  for (const auto& e : a)
    when.emplace_back(e.at("bit").get<int>(), e.at("value").get<int>());
  return when;
}

json instrs_to_json(const std::vector<Instruction>& v) {
  json arr = json::array();
  for (const auto& in : v) {
    json j;
    switch (in.kind) {
      case InstrKind::Gate:
        j["op"] = "gate";
        j["gate"] = gate_name(in.gate);
        j["qubits"] = in.qubits;
        if (gate_has_param(in.gate)) j["param"] = hexf(in.param);
        break;
      case InstrKind::Measure:
        j["op"] = "measure";
        j["qubit"] = in.qubits[0];
        j["bit"] = in.bits[0];
        break;
      case InstrKind::Reset:
        j["op"] = "reset";
        j["qubit"] = in.qubits[0];
        break;
      case InstrKind::Assign:
        j["op"] = "assign";
        j["dest"] = in.dest_bit;
        j["fn"] = assign_op_name(in.assign_op);
        j["sources"] = in.bits;
        if (in.assign_op == AssignOp::Const) j["value"] = in.const_val;
        break;
      case InstrKind::Cond:
        j["op"] = "cond";
        j["when"] = when_to_json(in.when);
        j["body"] = instrs_to_json(in.body);
        break;
      case InstrKind::Rus:
        j["op"] = "rus";
        j["limit"] = in.rus_limit;
        j["success"] = when_to_json(in.when);
        j["body"] = instrs_to_json(in.body);
        break;
      case InstrKind::Barrier:
        j["op"] = "barrier";
        j["label"] = in.label;
        j["qubits"] = in.qubits;
        break;
      case InstrKind::NoiseMarker:
        j["op"] = "noise";
        j["channel"] = in.label;
        j["prob"] = hexf(in.param);
        j["qubits"] = in.qubits;
        break;
      case InstrKind::IdealPrepZero:
        j["op"] = "ideal_prep_zero";
        j["qubits"] = in.qubits;
        break;
    }
    arr.push_back(std::move(j));
  }
  return arr;
}

std::vector<Instruction> instrs_from_json(const json& arr) {
  std::vector<Instruction> out;
  for (const auto& j : arr) {
    Instruction in;
    std::string op = j.at("op").get<std::string>();
    if (op == "gate") {
      in.kind = InstrKind::Gate;
      if (!gate_name_lookup(j.at("gate").get<std::string>(), &in.gate))
        throw std::runtime_error("unknown gate in json");
      in.qubits = j.at("qubits").get<std::vector<int>>();
      if (j.contains("param")) in.param = parse_hexf(j["param"].get<std::string>());
    } else if (op == "measure") {
      in.kind = InstrKind::Measure;
      in.qubits = {j.at("qubit").get<int>()};
      in.bits = {j.at("bit").get<int>()};
    } else if (op == "reset") {
      in.kind = InstrKind::Reset;
      in.qubits = {j.at("qubit").get<int>()};
    } else if (op == "assign") {
      in.kind = InstrKind::Assign;
      in.dest_bit = j.at("dest").get<int>();
      in.assign_op = assign_op_parse(j.at("fn").get<std::string>());
      in.bits = j.at("sources").get<std::vector<int>>();
      if (j.contains("value")) in.const_val = j["value"].get<int>();
    } else if (op == "cond") {
      in.kind = InstrKind::Cond;
      in.when = when_from_json(j.at("when"));
      in.body = instrs_from_json(j.at("body"));
    } else if (op == "rus") {
      in.kind = InstrKind::Rus;
      in.rus_limit = j.at("limit").get<int>();
      in.when = when_from_json(j.at("success"));
      in.body = instrs_from_json(j.at("body"));
    } else if (op == "barrier") {
      in.kind = InstrKind::Barrier;
      in.label = j.at("label").get<std::string>();
      in.qubits = j.at("qubits").get<std::vector<int>>();
    } else if (op == "noise") {
      in.kind = InstrKind::NoiseMarker;
      in.label = j.at("channel").get<std::string>();
      in.param = parse_hexf(j.at("prob").get<std::string>());
      in.qubits = j.at("qubits").get<std::vector<int>>();
    } else if (op == "ideal_prep_zero") {
      in.kind = InstrKind::IdealPrepZero;
      in.qubits = j.at("qubits").get<std::vector<int>>();
    } else {
      throw std::runtime_error("unknown op in json: " + op);
    }
    out.push_back(std::move(in));
  }
  return out;
}

}  // namespace

std::string circuit_to_text(const Circuit& c) {
  std::ostringstream os;
  os << "ftqc 1\n";
  os << "qubits " << c.num_qubits << "\n";
  os << "bits " << c.num_bits << "\n";
  emit_instrs(os, c.instrs, 0);
  return os.str();
}

Circuit circuit_from_text(const std::string& text) {
  Parser p;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    p.lines.push_back(line);
  }
  Circuit c;
  bool have_header = false;
  while (p.pos < p.lines.size()) {
    auto toks = Parser::tokenize(p.lines[p.pos]);
    if (toks.empty()) {
      ++p.pos;
      continue;
    }
    if (toks[0] == "ftqc") {
      have_header = true;
      ++p.pos;
    } else if (toks[0] == "qubits") {
      c.num_qubits = std::stoi(toks.at(1));
      ++p.pos;
    } else if (toks[0] == "bits") {
      c.num_bits = std::stoi(toks.at(1));
      ++p.pos;
    } else {
      break;
    }
  }
  if (!have_header) throw std::runtime_error("missing ftqc header line");
  c.instrs = p.parse_block();
  return c;
}

std::string circuit_to_json(const Circuit& c) {
  json j;
  j["format"] = "ftqc";
  j["version"] = 1;
  j["qubits"] = c.num_qubits;
  j["bits"] = c.num_bits;
  j["instructions"] = instrs_to_json(c.instrs);
  return j.dump(2);
}

Circuit circuit_from_json(const std::string& json_text) {
  json j = json::parse(json_text);
  if (j.at("format").get<std::string>() != "ftqc")
    throw std::runtime_error("not an ftqc json circuit");
  Circuit c;
  c.num_qubits = j.at("qubits").get<int>();
  c.num_bits = j.at("bits").get<int>();
  c.instrs = instrs_from_json(j.at("instructions"));
  return c;
}

}  // namespace ftqc
