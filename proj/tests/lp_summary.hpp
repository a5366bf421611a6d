#pragma once

// Minimal reader for the LP files the exporter writes; used to check their
// structure independently of the writer.

#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace lp {

struct Summary {
  std::map<std::string, double> objective_terms;
  std::vector<std::string> constraint_names;
  std::set<std::string> binaries;
  long cardinality_rhs = -1;
  bool saw_end = false;
};

inline Summary summarize(const std::string& text) {
  Summary s;
  enum class Section { None, Objective, Constraints, Binary, Done } section = Section::None;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '\\') continue;
    std::istringstream tok(line);
    std::string first;
    tok >> first;
    if (first.empty()) continue;
    if (first == "Minimize") { section = Section::Objective; continue; }
    if (first == "Subject") { section = Section::Constraints; continue; }
    if (first == "Binary") { section = Section::Binary; continue; }
    if (first == "End") { section = Section::Done; s.saw_end = true; continue; }
    switch (section) {
      case Section::Objective: {
        std::istringstream terms(line);
        std::string word;
        std::vector<std::string> words;
        while (terms >> word) {
          if (word != "obj:") words.push_back(word);
        }
        for (std::size_t i = 0; i + 1 < words.size(); i += 2) s.objective_terms[words[i + 1]] = std::stod(words[i]);
        break;
      }
      case Section::Constraints: {
        if (first.back() != ':') throw std::runtime_error("unnamed constraint: " + line);
        s.constraint_names.push_back(first.substr(0, first.size() - 1));
        if (first == "card:") {
          const auto eq = line.find('=');
          s.cardinality_rhs = std::stol(line.substr(eq + 1));
        }
        break;
      }
      case Section::Binary: {
        std::istringstream vars(line);
        std::string v;
        while (vars >> v) s.binaries.insert(v);
        break;
      }
      default:
        throw std::runtime_error("content outside a section: " + line);
    }
  }
  return s;
}

}  // namespace lp
