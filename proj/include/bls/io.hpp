#pragma once

// Text formats: system files, solver outcomes and pencil dumps.
//
//   # comment
//   field Q | Q(i) | GF(p)
//   dims p q m
//   mode any | nontrivial | totally_nonzero      (optional)
//   matrix 1
//   <p rows of q scalars>
//   ...
//   rhs g_1 ... g_m

#include <cstddef>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "bls/error.hpp"
#include "bls/field.hpp"
#include "bls/matrix.hpp"
#include "bls/pencil.hpp"
#include "bls/rank_one.hpp"
#include "bls/system.hpp"

namespace bls {

struct SystemFile {
  BilinearSystem system;
  std::optional<SolutionMode> mode;
};

namespace io_detail {

struct Token {
  std::string text;
  std::size_t column = 0;  // 1-based
};

struct Line {
  std::size_t number = 0;  // 1-based
  std::vector<Token> tokens;
};

inline std::vector<Line> tokenize(std::string_view text) {
  std::vector<Line> lines;
  std::size_t number = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view raw = text.substr(start, end - start);
    ++number;
    if (auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    Line line{number, {}};
    std::size_t pos = 0;
    while (pos < raw.size()) {
      while (pos < raw.size() && (raw[pos] == ' ' || raw[pos] == '\t' || raw[pos] == '\r')) ++pos;
      if (pos >= raw.size()) break;
      const std::size_t begin = pos;
      while (pos < raw.size() && raw[pos] != ' ' && raw[pos] != '\t' && raw[pos] != '\r') ++pos;
      line.tokens.push_back({std::string(raw.substr(begin, pos - begin)), begin + 1});
    }
    if (!line.tokens.empty()) lines.push_back(std::move(line));
    if (end == text.size()) break;
    start = end + 1;
  }
  return lines;
}

[[noreturn]] inline void fail(std::size_t line, std::size_t column, const std::string& what) {
  throw Error(Errc::ParseError, "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what);
}

inline std::size_t parse_count(const Line& l, std::size_t k) {
  if (k >= l.tokens.size()) fail(l.number, 1, "missing integer");
  const Token& t = l.tokens[k];
  if (!detail::all_digits(t.text)) fail(l.number, t.column, "expected a nonnegative integer, got '" + t.text + "'");
  return std::stoul(t.text);
}

inline Scalar parse_token(const Line& l, const Token& t, const FieldSpec& f) {
  try {
    return parse_scalar(t.text, f);
  } catch (const Error& e) {
    fail(l.number, t.column, e.message());
  }
}

}  // namespace io_detail

/// Parses a system file. `field_override` reinterprets the entries over
/// another field (e.g. an integer file over GF(p)).
inline SystemFile parse_system_file(std::string_view text, std::optional<FieldSpec> field_override = std::nullopt) {
  using io_detail::fail;
  const auto lines = io_detail::tokenize(text);
  std::optional<FieldSpec> field = field_override;
  std::optional<std::size_t> p, q, m;
  std::optional<SolutionMode> mode;
  std::vector<std::optional<Matrix>> mats;
  std::optional<Vector> rhs;
  bool field_seen = false;

  for (std::size_t li = 0; li < lines.size(); ++li) {
    const auto& l = lines[li];
    const std::string& kw = l.tokens[0].text;
    if (kw == "field") {
      if (l.tokens.size() != 2) fail(l.number, l.tokens[0].column, "expected: field Q | Q(i) | GF(p)");
      FieldSpec parsed;
      try {
        parsed = parse_field(l.tokens[1].text);
      } catch (const Error& e) {
        fail(l.number, l.tokens[1].column, e.message());
      }
      if (!field_override) field = parsed;
      field_seen = true;
    } else if (kw == "dims") {
      if (l.tokens.size() != 4) fail(l.number, l.tokens[0].column, "expected: dims p q m");
      p = io_detail::parse_count(l, 1);
      q = io_detail::parse_count(l, 2);
      m = io_detail::parse_count(l, 3);
      if (*p == 0 || *q == 0) fail(l.number, l.tokens[1].column, "p and q must be positive");
      mats.assign(*m, std::nullopt);
    } else if (kw == "mode") {
      if (l.tokens.size() != 2) fail(l.number, l.tokens[0].column, "expected: mode any | nontrivial | totally_nonzero");
      try {
        mode = parse_mode(l.tokens[1].text);
      } catch (const Error& e) {
        fail(l.number, l.tokens[1].column, e.message());
      }
    } else if (kw == "matrix") {
      if (!field || !p) fail(l.number, 1, "'field' and 'dims' must precede matrices");
      if (l.tokens.size() != 2) fail(l.number, l.tokens[0].column, "expected: matrix k");
      const std::size_t k = io_detail::parse_count(l, 1);
      if (k < 1 || k > *m) fail(l.number, l.tokens[1].column, "matrix index out of range 1.." + std::to_string(*m));
      if (mats[k - 1]) fail(l.number, l.tokens[1].column, "matrix " + std::to_string(k) + " given twice");
      Matrix a(*p, *q, *field);
      for (std::size_t i = 0; i < *p; ++i) {
        if (++li >= lines.size()) fail(l.number, 1, "matrix " + std::to_string(k) + " has fewer than p rows");
        const auto& row = lines[li];
        if (row.tokens.size() != *q) {
          fail(row.number, 1, "expected " + std::to_string(*q) + " entries, got " + std::to_string(row.tokens.size()));
        }
        for (std::size_t j = 0; j < *q; ++j) a(i, j) = io_detail::parse_token(row, row.tokens[j], *field);
      }
      mats[k - 1] = std::move(a);
    } else if (kw == "rhs") {
      if (!field || !m) fail(l.number, 1, "'field' and 'dims' must precede rhs");
      if (l.tokens.size() != *m + 1) {
        fail(l.number, 1, "expected " + std::to_string(*m) + " rhs entries, got " + std::to_string(l.tokens.size() - 1));
      }
      Vector g;
      for (std::size_t k = 1; k < l.tokens.size(); ++k) g.push_back(io_detail::parse_token(l, l.tokens[k], *field));
      rhs = std::move(g);
    } else {
      fail(l.number, l.tokens[0].column, "unknown keyword '" + kw + "'");
    }
  }
  const std::size_t last = lines.empty() ? 1 : lines.back().number;
  if (!field_seen && !field_override) fail(last, 1, "missing 'field' line");
  if (!p) fail(last, 1, "missing 'dims' line");
  std::vector<Matrix> out;
  for (std::size_t k = 0; k < *m; ++k) {
    if (!mats[k]) fail(last, 1, "matrix " + std::to_string(k + 1) + " missing");
    out.push_back(std::move(*mats[k]));
  }
  if (!rhs) {
    if (*m != 0) fail(last, 1, "missing 'rhs' line");
    rhs = Vector{};
  }
  return {BilinearSystem(*p, *q, *field, std::move(out), std::move(*rhs)), mode};
}

inline std::string format_matrix_rows(const Matrix& a, const std::string& indent = "") {
  std::string out;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    out += indent;
    for (std::size_t j = 0; j < a.cols(); ++j) out += (j == 0 ? "" : " ") + a(i, j).to_string();
    out += '\n';
  }
  return out;
}

inline std::string emit_system_file(const SystemFile& file) {
  const auto& s = file.system;
  std::string out = "field " + s.field().to_string() + "\n";
  out += "dims " + std::to_string(s.p()) + " " + std::to_string(s.q()) + " " + std::to_string(s.m()) + "\n";
  if (file.mode) out += "mode " + to_string(*file.mode) + "\n";
  for (std::size_t k = 0; k < s.m(); ++k) {
    out += "matrix " + std::to_string(k + 1) + "\n" + format_matrix_rows(s.matrix(k));
  }
  out += "rhs";
  for (const auto& g : s.rhs()) out += " " + g.to_string();
  return out + "\n";
}

/// "x = (1, 2)  y = (1, 1)"
inline std::string format_solution(const SolutionPair& s) { return "x = " + to_string(s.x) + "  y = " + to_string(s.y); }

namespace io_detail {

inline Vector parse_tuple(std::string_view text, const FieldSpec& f) {
  const auto open = text.find('(');
  const auto close = text.find(')', open);
  if (open == std::string_view::npos || close == std::string_view::npos) {
    throw Error(Errc::ParseError, "expected a parenthesized tuple");
  }
  Vector out;
  std::string_view body = text.substr(open + 1, close - open - 1);
  while (!body.empty()) {
    const auto comma = body.find(',');
    std::string_view item = body.substr(0, comma);
    while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
    while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
    out.push_back(parse_scalar(item, f));
    if (comma == std::string_view::npos) break;
    body.remove_prefix(comma + 1);
  }
  return out;
}

}  // namespace io_detail

/// Inverse of format_solution.
inline SolutionPair parse_solution(std::string_view line, const FieldSpec& f) {
  const auto xp = line.find("x =");
  const auto yp = line.find("y =");
  if (xp == std::string_view::npos || yp == std::string_view::npos) throw Error(Errc::ParseError, "not a solution line");
  return {io_detail::parse_tuple(line.substr(xp, yp - xp), f), io_detail::parse_tuple(line.substr(yp), f)};
}

inline std::string format_pencil(const AffinePencil& pencil) {
  std::string out = "pencil p=" + std::to_string(pencil.p) + " q=" + std::to_string(pencil.q) +
                    " r=" + std::to_string(pencil.r()) + " field " + pencil.field.to_string() + "\n";
  out += "K0\n" + format_matrix_rows(pencil.k0, "  ");
  for (std::size_t k = 0; k < pencil.r(); ++k) {
    out += "K" + std::to_string(k + 1) + "\n" + format_matrix_rows(pencil.basis[k], "  ");
  }
  return out;
}

inline std::string format_outcome(const SolverOutcome& out) {
  std::string s = "status: " + to_string(out.status) + "\n";
  if (out.solved()) {
    s += "solutions: " + std::to_string(out.solutions.size()) + "\n";
    for (const auto& sol : out.solutions) s += "  " + format_solution(sol) + "\n";
  }
  const auto& c = out.certificate;
  if (c.kind != CertificateKind::None) s += "certificate: " + to_string(c.kind) + "\n";
  if (!c.summary.empty()) s += "  " + c.summary + "\n";
  if (!c.discriminants.empty()) {
    s += "  discriminants:";
    for (const auto& d : c.discriminants) s += " " + d.to_string();
    s += "\n";
  }
  if (c.kind == CertificateKind::R1NoCommonRoot || c.kind == CertificateKind::ConstantMinorNonzero) {
    for (const auto& poly : c.polynomials) s += "  minor: " + poly.to_string() + "\n";
  }
  for (const auto& n : c.notes) s += "  note: " + n + "\n";
  return s;
}

}  // namespace bls
