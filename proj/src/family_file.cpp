#include "brim/family_file.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "brim/errors.hpp"

namespace brim {

namespace {

std::vector<std::string_view> split_words(std::string_view line) {
  std::vector<std::string_view> words;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) words.push_back(line.substr(i, j - i));
    i = j;
  }
  return words;
}

template <class Int>
Int parse_int(std::string_view word, std::size_t line, const char* what) {
  Int v{};
  auto [end, ec] = std::from_chars(word.data(), word.data() + word.size(), v);
  if (ec != std::errc() || end != word.data() + word.size()) {
    throw ParseError(line, std::string("expected ") + what + ", got '" + std::string(word) + "'");
  }
  return v;
}

}  // namespace

FamilyFile parse_family_file(std::string_view text, bool allow_non_primary) {
  FamilyFile file;
  std::vector<std::vector<Monomial>> gens;

  auto close_ideal = [&](std::size_t line) {
    if (gens.empty()) return;
    if (gens.back().empty()) {
      throw ParseError(file.lines.back(), "ideal has no generators");
    }
    MonomialIdeal ideal(file.dim, gens.back());
    if (ideal.is_unit()) throw ParseError(file.lines.back(), "unit ideal (generator 1)");
    if (!allow_non_primary && !is_m_primary(ideal)) {
      throw ParseError(file.lines.back(), "ideal is not m-primary (infinite colength)");
    }
    file.ideals.push_back(std::move(ideal));
    (void)line;
  };

  std::size_t line_no = 0;
  std::size_t last_content = 1;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t eol = std::min(text.find('\n', pos), text.size());
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    const auto words = split_words(line);
    if (words.empty()) continue;
    last_content = line_no;

    if (words[0] == "vars") {
      if (file.dim != 0) throw ParseError(line_no, "duplicate 'vars' header");
      if (words.size() != 2) throw ParseError(line_no, "expected 'vars <d>'");
      file.dim = parse_int<std::size_t>(words[1], line_no, "a dimension");
      if (file.dim == 0) throw ParseError(line_no, "dimension must be at least 1");
    } else if (words[0] == "ideal") {
      if (file.dim == 0) throw ParseError(line_no, "'ideal' before 'vars' header");
      if (words.size() > 2) throw ParseError(line_no, "expected 'ideal [name]'");
      close_ideal(line_no);
      gens.emplace_back();
      file.names.emplace_back(words.size() == 2 ? std::string(words[1]) : std::string());
      file.lines.push_back(line_no);
    } else if (words[0] == "gen") {
      if (gens.empty()) throw ParseError(line_no, "'gen' outside an ideal");
      if (words.size() != file.dim + 1) {
        throw ParseError(line_no, "generator has " + std::to_string(words.size() - 1) +
                                      " exponents, expected " + std::to_string(file.dim));
      }
      std::vector<Exponent> exps;
      for (std::size_t j = 1; j < words.size(); ++j) {
        exps.push_back(parse_int<Exponent>(words[j], line_no, "a non-negative exponent"));
      }
      gens.back().emplace_back(std::move(exps));
    } else {
      throw ParseError(line_no, "unknown keyword '" + std::string(words[0]) + "'");
    }
  }
  if (file.dim == 0) throw ParseError(last_content, "missing 'vars' header");
  close_ideal(last_content);
  if (file.ideals.empty()) throw ParseError(last_content, "no ideals");
  return file;
}

IdealFamily parse_family(std::string_view text) { return parse_family_file(text).family(); }

FamilyFile load_family_file(const std::string& path, bool allow_non_primary) {
  std::ifstream in(path);
  if (!in) throw std::ios_base::failure("cannot open '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  FamilyFile file = parse_family_file(buf.str(), allow_non_primary);
  file.path = path;
  return file;
}

std::string render_family(const IdealFamily& family, const std::vector<std::string>& names) {
  std::ostringstream os;
  os << "vars " << family.dim() << '\n';
  for (std::size_t j = 0; j < family.count(); ++j) {
    os << "ideal";
    if (j < names.size() && !names[j].empty()) os << ' ' << names[j];
    os << '\n';
    for (std::size_t i = 0; i < family[j].size(); ++i) {
      os << "gen";
      for (Exponent e : family[j].generator(i)) os << ' ' << e;
      os << '\n';
    }
  }
  return os.str();
}

}  // namespace brim
