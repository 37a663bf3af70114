#include <sstream>

#include "presto/dsl.hpp"

namespace presto {

namespace {

std::string joined(const auto& items, std::string_view sep = ", ") {
  std::string out;
  for (const auto& item : items) {
    if (!out.empty()) out += sep;
    out += item;
  }
  return out;
}

std::string dotString(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    if (c == '\n') {
      out += "\\n";
      continue;
    }
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string printPres(const PresNet& net) {
  std::ostringstream os;
  os << "net " << net.name << " {\n";
  for (const auto& p : net.places) {
    os << "  place " << p.id;
    if (p.var != "v_" + p.id) os << " var " << p.var;
    if (p.tokenType != "int") os << " type " << p.tokenType;
    if (p.marked) os << " marked";
    os << ";\n";
  }
  for (const auto& t : net.transitions) {
    std::vector<std::string> pre, post;
    for (const auto& [p, id] : net.inputArcs) {
      if (id == t.id) pre.push_back(p);
    }
    for (const auto& [id, p] : net.outputArcs) {
      if (id == t.id) post.push_back(p);
    }
    os << "  transition " << t.id << " {\n";
    os << "    pre " << joined(pre) << ";\n";
    os << "    post " << joined(post) << ";\n";
    os << "    fn " << toString(t.fn) << ";\n";
    if (t.guard) os << "    guard " << toString(*t.guard) << ";\n";
    os << "  }\n";
  }
  os << "}\n";
  return os.str();
}

std::string printFsmd(const Fsmd& m) {
  std::ostringstream os;
  const bool wrapped = !m.name.empty();
  const std::string indent = wrapped ? "  " : "";
  if (wrapped) os << "fsmd " << m.name << " {\n";
  os << indent << "states " << joined(m.states) << ";\n";
  os << indent << "reset " << m.reset << ";\n";
  os << indent << "inputs " << joined(m.inputs) << ";\n";
  os << indent << "storage " << joined(m.storage) << ";\n";
  os << indent << "outputs " << joined(m.outputs) << ";\n";
  for (const auto& t : m.transitions) {
    os << indent << t.source << " -> " << t.target;
    if (!t.guards.empty()) {
      std::vector<std::string> guards;
      for (const auto& g : t.guards) guards.push_back(toString(g));
      os << " when " << joined(guards);
    }
    if (t.updates.empty()) {
      os << " { }\n";
      continue;
    }
    os << " {\n";
    for (const auto& a : t.updates) os << indent << "  " << a.target << " <= " << toString(a.value) << ";\n";
    os << indent << "}\n";
  }
  if (wrapped) os << "}\n";
  return os.str();
}

std::string exportDot(const PresNet& net) {
  std::ostringstream os;
  os << "digraph " << dotString(net.name) << " {\n  rankdir=LR;\n";
  for (const auto& p : net.places) {
    os << "  " << dotString(p.id) << " [shape=circle, label=" << dotString(p.id + "\n" + p.var);
    if (p.marked) os << ", style=filled, fillcolor=gray80";
    os << "];\n";
  }
  for (const auto& t : net.transitions) {
    std::string label = t.id + "\n" + toString(t.fn);
    if (t.guard) label += "\n[" + toString(*t.guard) + "]";
    os << "  " << dotString(t.id) << " [shape=box, label=" << dotString(label) << "];\n";
  }
  for (const auto& [p, t] : net.inputArcs) os << "  " << dotString(p) << " -> " << dotString(t) << ";\n";
  for (const auto& [t, p] : net.outputArcs) os << "  " << dotString(t) << " -> " << dotString(p) << ";\n";
  os << "}\n";
  return os.str();
}

std::string exportDot(const Fsmd& m) {
  std::ostringstream os;
  os << "digraph " << dotString(m.name.empty() ? "fsmd" : m.name) << " {\n";
  for (const auto& q : m.states) {
    os << "  " << dotString(q) << " [shape=ellipse";
    if (q == m.reset) os << ", peripheries=2";
    os << "];\n";
  }
  for (const auto& t : m.transitions) {
    std::vector<std::string> lines;
    if (!t.guards.empty()) {
      std::vector<std::string> guards;
      for (const auto& g : t.guards) guards.push_back(toString(g));
      lines.push_back("[" + joined(guards) + "]");
    }
    for (const auto& a : t.updates) lines.push_back(a.target + " <= " + toString(a.value));
    os << "  " << dotString(t.source) << " -> " << dotString(t.target) << " [label=" << dotString(joined(lines, "\n"))
       << "];\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace presto
