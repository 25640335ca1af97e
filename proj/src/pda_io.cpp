#include "pdakit/pda_io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <limits>
#include <optional>
#include <sstream>

#include "pdakit/errors.hpp"

namespace pdakit {

namespace {

struct Token {
  std::string_view text;
  std::size_t column;  // 1-based
};

std::vector<Token> split_tokens(std::string_view line) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    if (i >= line.size()) break;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
    tokens.push_back({line.substr(start, i - start), start + 1});
  }
  return tokens;
}

std::size_t parse_count(const Token& tok, std::size_t line, const char* what) {
  std::size_t value = 0;
  const auto* first = tok.text.data();
  const auto* last = first + tok.text.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last) {
    throw ParseError(line, tok.column,
                     std::string("expected a non-negative integer for ") + what + ", got '" +
                         std::string(tok.text) + "'");
  }
  return value;
}

Cell parse_cell(const Token& tok, std::size_t line) {
  if (tok.text == "*") return kStar;
  const auto* first = tok.text.data();
  const auto* last = first + tok.text.size();
  if (first != last && *first == '-') {
    throw ParseError(line, tok.column, "symbol must be positive, got '" + std::string(tok.text) + "'");
  }
  std::uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last) {
    throw ParseError(line, tok.column,
                     "expected '*' or a positive integer, got '" + std::string(tok.text) + "'");
  }
  if (value == 0) throw ParseError(line, tok.column, "symbol 0 is not allowed; symbols start at 1");
  if (value > std::numeric_limits<std::uint32_t>::max())
    throw ParseError(line, tok.column, "symbol " + std::string(tok.text) + " is too large");
  return Cell::symbol(static_cast<std::uint32_t>(value));
}

bool skippable(std::string_view line) {
  for (char c : line) {
    if (c == '#') return true;
    if (c != ' ' && c != '\t' && c != '\r') return false;
  }
  return true;
}

}  // namespace

PdaDocument parse_pda_document(std::string_view text) {
  if (text.empty()) throw ParseError(1, 1, "empty input");
  if (text.back() != '\n') {
    std::size_t lines = 1;
    for (char c : text) lines += c == '\n' ? 1 : 0;
    throw ParseError(lines, 1, "missing trailing newline");
  }

  std::optional<DeclaredParams> header;
  std::vector<Cell> cells;
  std::size_t rows_read = 0;
  // First occurrence of each symbol, for locating gaps.
  std::vector<std::pair<std::size_t, std::size_t>> first_seen;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const std::size_t end = text.find('\n', pos);
    const std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (skippable(line)) continue;
    const auto tokens = split_tokens(line);

    if (!header) {
      if (tokens.size() != 4) {
        throw ParseError(line_no, 1, "header must be 'K F Z S', got " +
                                         std::to_string(tokens.size()) + " fields");
      }
      DeclaredParams h;
      h.users = parse_count(tokens[0], line_no, "K");
      h.subpackets = parse_count(tokens[1], line_no, "F");
      h.stars = parse_count(tokens[2], line_no, "Z");
      h.symbols = parse_count(tokens[3], line_no, "S");
      if (h.users == 0) throw ParseError(line_no, tokens[0].column, "K must be at least 1");
      if (h.subpackets == 0) throw ParseError(line_no, tokens[1].column, "F must be at least 1");
      if (h.stars > h.subpackets) throw ParseError(line_no, tokens[2].column, "Z exceeds F");
      if (h.users > std::numeric_limits<std::uint32_t>::max() / h.subpackets)
        throw ParseError(line_no, 1, "K x F is too large");
      header = h;
      cells.reserve(std::min<std::size_t>(h.users * h.subpackets, std::size_t{1} << 24));
      continue;
    }

    if (rows_read == header->subpackets) {
      throw ParseError(line_no, 1, "more than F = " + std::to_string(header->subpackets) + " rows");
    }
    if (tokens.size() != header->users) {
      const std::size_t col = tokens.size() > header->users ? tokens[header->users].column
                                                             : line.size() + 1;
      throw ParseError(line_no, col,
                       "expected K = " + std::to_string(header->users) + " entries, got " +
                           std::to_string(tokens.size()));
    }
    for (const auto& tok : tokens) {
      const Cell cell = parse_cell(tok, line_no);
      if (cell.is_symbol() && cell.value() > header->users * header->subpackets) {
        throw ParseError(line_no, tok.column,
                         "symbol gap: " + std::string(tok.text) +
                             " exceeds the cell count, so 1.." + std::string(tok.text) +
                             " cannot all occur");
      }
      if (cell.is_symbol()) {
        if (first_seen.size() <= cell.value()) first_seen.resize(cell.value() + 1, {0, 0});
        if (first_seen[cell.value()].first == 0) first_seen[cell.value()] = {line_no, tok.column};
      }
      cells.push_back(cell);
    }
    ++rows_read;
  }

  if (!header) throw ParseError(line_no, 1, "missing header line 'K F Z S'");
  if (rows_read != header->subpackets) {
    throw ParseError(line_no, 1,
                     "expected F = " + std::to_string(header->subpackets) + " rows, got " +
                         std::to_string(rows_read));
  }

  // The symbols used must be exactly 1..max.
  for (std::size_t s = 1; s < first_seen.size(); ++s) {
    if (first_seen[s].first != 0) continue;
    std::size_t above = s + 1;
    while (first_seen[above].first == 0) ++above;
    throw ParseError(first_seen[above].first, first_seen[above].second,
                     "symbol gap: " + std::to_string(s) + " never occurs but " +
                         std::to_string(above) + " does");
  }

  return PdaDocument{*header, PdaArray(header->subpackets, header->users, std::move(cells))};
}

PdaArray parse_pda(std::string_view text) { return parse_pda_document(text).array; }

std::string emit_pda(const PdaArray& arr) {
  std::size_t stars = 0;
  for (std::size_t r = 0; r < arr.rows(); ++r) stars += arr.at(r, 0).is_star() ? 1 : 0;
  std::string out;
  out.reserve(arr.rows() * arr.cols() * 3 + 32);
  out += std::to_string(arr.cols()) + ' ' + std::to_string(arr.rows()) + ' ' +
         std::to_string(stars) + ' ' + std::to_string(arr.max_symbol()) + '\n';
  for (std::size_t r = 0; r < arr.rows(); ++r) {
    const auto row = arr.row(r);
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out += ' ';
      if (row[c].is_star())
        out += '*';
      else
        out += std::to_string(row[c].value());
    }
    out += '\n';
  }
  return out;
}

PdaDocument read_pda_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_pda_document(buf.str());
}

void write_pda_file(const std::filesystem::path& path, const PdaArray& arr) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path.string() + "'");
  out << emit_pda(arr);
  if (!out) throw Error("write to '" + path.string() + "' failed");
}

}  // namespace pdakit
