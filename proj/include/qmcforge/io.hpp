#pragma once

// Parameter files (lattice, net, Sobol' formats, Joe-Kuo ingestion) and the
// text grammars for weights, criteria, exploration methods and sizes.

#include <bit>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "qmcforge/error.hpp"
#include "qmcforge/fom.hpp"
#include "qmcforge/gf2.hpp"
#include "qmcforge/pointsets.hpp"
#include "qmcforge/search.hpp"
#include "qmcforge/weights.hpp"

namespace qmcforge {

inline constexpr const char* kPlrHeader = "# Parameters for a polynomial lattice rule in base 2";
inline constexpr const char* kHoplrHeader = "# Parameters for a higher-order polynomial lattice rule in base 2";
inline constexpr const char* kInterlacedPlrHeader = "# Parameters for an interlaced polynomial lattice rule in base 2";
inline constexpr const char* kInterlacedHoplrHeader =
    "# Parameters for an interlaced higher-order polynomial lattice rule in base 2";
inline constexpr const char* kOrdinaryHeader = "# Parameters for a rank-1 lattice rule";
inline constexpr const char* kNetHeader = "# Parameters for a digital net in base 2";
inline constexpr const char* kSobolHeader = "# Initial direction numbers m_{j,c} for Sobol points";

namespace detail {

// "value" left-aligned in a field of `width` columns (at least one trailing
// space), then the comment.
inline std::string fieldLine(const std::string& value, std::size_t width, const std::string& comment) {
  std::string line = value;
  line.append(value.size() < width ? width - value.size() : 1, ' ');
  return line + "# " + comment + "\n";
}

inline std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

struct TextLine {
  int number;
  std::string content;  // without comment
  std::string comment;  // after '#', trimmed
};

inline std::vector<TextLine> splitLines(const std::string& text) {
  std::vector<TextLine> out;
  std::istringstream in(text);
  std::string raw;
  int number = 0;
  while (std::getline(in, raw)) {
    ++number;
    const auto hash = raw.find('#');
    TextLine l{number, trim(raw.substr(0, hash)), hash == std::string::npos ? "" : trim(raw.substr(hash + 1))};
    out.push_back(std::move(l));
  }
  return out;
}

inline std::uint64_t parseUnsigned(const std::string& tok, int line) {
  std::uint64_t v = 0;
  const auto* end = tok.data() + tok.size();
  const auto [p, ec] = std::from_chars(tok.data(), end, v);
  if (ec != std::errc() || p != end || tok.empty()) throw ParseError("expected a nonnegative integer, got '" + tok + "'", line);
  return v;
}

inline double parseReal(const std::string& tok, int line = 0) {
  const std::string t = trim(tok);
  if (t == "inf" || t == "Inf" || t == "INF") return std::numeric_limits<double>::infinity();
  try {
    std::size_t used = 0;
    const double v = std::stod(t, &used);
    if (used != t.size()) throw ParseError("expected a real number, got '" + t + "'", line);
    return v;
  } catch (const std::logic_error&) {
    throw ParseError("expected a real number, got '" + t + "'", line);
  }
}

inline std::vector<std::string> splitTokens(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

inline std::vector<std::string> splitOn(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    const auto pos = s.find(sep, start);
    out.push_back(s.substr(start, pos == std::string::npos ? std::string::npos : pos - start));
    if (pos == std::string::npos) return out;
    start = pos + 1;
  }
}

// Lines carrying a value (non-empty content), after the header.
inline std::vector<TextLine> valueLines(const std::vector<TextLine>& lines) {
  std::vector<TextLine> out;
  for (const auto& l : lines) {
    if (!l.content.empty()) out.push_back(l);
  }
  return out;
}

inline const TextLine& firstNonBlank(const std::vector<TextLine>& lines) {
  for (const auto& l : lines) {
    if (!l.content.empty() || !l.comment.empty()) return l;
  }
  throw ParseError("empty parameter file");
}

inline std::uint64_t singleValue(const TextLine& l) {
  const auto toks = splitTokens(l.content);
  if (toks.size() != 1) throw ParseError("expected one value", l.number);
  return parseUnsigned(toks[0], l.number);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Lattice format

inline std::string emitLatticeFile(const PointSetDef& def) {
  std::ostringstream out;
  auto field = [&](const std::string& v, const std::string& c) { out << detail::fieldLine(v, 8, c); };
  auto genLines = [&](const std::vector<std::string>& gens) {
    for (std::size_t j = 0; j < gens.size(); ++j) {
      if (j == 0) field(gens[j], "coordinates of generating vector, starting at j=1");
      else out << gens[j] << "\n";
    }
  };
  auto polyGens = [](const PolynomialLatticeRule& r) {
    std::vector<std::string> g;
    for (auto p : r.gen) g.push_back(std::to_string(p.bits()));
    return g;
  };
  auto sizeLine = [&](int k) {
    field(std::to_string(k), "n = 2^" + std::to_string(k) + " = " + std::to_string(std::uint64_t{1} << k) + " points");
  };
  if (const auto* lat = std::get_if<Rank1Lattice>(&def)) {
    out << kOrdinaryHeader << "\n";
    field(std::to_string(lat->dimension()), "s = " + std::to_string(lat->dimension()) + " dimensions");
    field(std::to_string(lat->size()), "n = " + std::to_string(lat->size()) + " points");
    std::vector<std::string> g;
    for (auto a : lat->generator()) g.push_back(std::to_string(a));
    genLines(g);
    return out.str();
  }
  auto writeRule = [&](const char* header, const PolynomialLatticeRule& rule, int k, int dims, int d) {
    if (rule.w != kDefaultOutputDigits) throw Error("lattice format stores rules with w = 31 output digits only; use the net format");
    out << header << "\n";
    field(std::to_string(dims), "s = " + std::to_string(dims) + " dimensions");
    sizeLine(k);
    field(std::to_string(rule.modulus.bits()), "polynomial modulus");
    if (d > 1) field(std::to_string(d), "d = " + std::to_string(d) + " interlacing factor");
    genLines(polyGens(rule));
  };
  if (const auto* p = std::get_if<PolynomialLatticeRule>(&def)) {
    p->validate();
    writeRule(kPlrHeader, *p, p->k(), p->dimension(), 1);
    return out.str();
  }
  if (const auto* h = std::get_if<HigherOrderPlr>(&def)) {
    h->validate();
    writeRule(kHoplrHeader, h->rule, h->k, h->rule.dimension(), 1);
    return out.str();
  }
  if (const auto* il = std::get_if<InterlacedNet>(&def)) {
    const int inner = std::visit([](const auto& x) { return dimension(PointSetDef(x)); }, il->inner);
    if (inner % il->d != 0) throw Error("inner dimension is not divisible by d");
    if (const auto* p = std::get_if<PolynomialLatticeRule>(&il->inner)) {
      p->validate();
      writeRule(kInterlacedPlrHeader, *p, p->k(), inner / il->d, il->d);
      return out.str();
    }
    if (const auto* h = std::get_if<HigherOrderPlr>(&il->inner)) {
      h->validate();
      writeRule(kInterlacedHoplrHeader, h->rule, h->k, inner / il->d, il->d);
      return out.str();
    }
  }
  throw Error("the lattice format holds rank-1 lattices and polynomial lattice rules only");
}

inline PointSetDef parseLatticeFile(const std::string& text) {
  const auto lines = detail::splitLines(text);
  const auto& head = detail::firstNonBlank(lines);
  const std::string header = "# " + head.comment;
  if (!head.content.empty()) throw ParseError("missing lattice header", head.number);
  const auto vals = detail::valueLines(lines);
  auto need = [&](std::size_t count) {
    if (vals.size() < count) throw ParseError("truncated lattice file", lines.empty() ? 0 : lines.back().number);
  };
  need(2);
  const auto s = detail::singleValue(vals[0]);
  if (s < 1) throw ParseError("dimension must be >= 1", vals[0].number);
  if (header == kOrdinaryHeader) {
    const auto n = detail::singleValue(vals[1]);
    need(2 + s);
    if (vals.size() != 2 + s) throw ParseError("expected " + std::to_string(s) + " generating-vector entries", vals.back().number);
    std::vector<std::uint64_t> a;
    for (std::size_t j = 0; j < s; ++j) a.push_back(detail::singleValue(vals[2 + j]));
    try {
      return Rank1Lattice(n, a);
    } catch (const Error& e) {
      throw ParseError(e.what(), vals[1].number);
    }
  }
  const bool interlaced = header == kInterlacedPlrHeader || header == kInterlacedHoplrHeader;
  const bool higher = header == kHoplrHeader || header == kInterlacedHoplrHeader;
  if (!interlaced && !higher && header != kPlrHeader) throw ParseError("unknown lattice header '" + header + "'", head.number);
  need(3);
  const auto k = detail::singleValue(vals[1]);
  const BinaryPolynomial modulus(detail::singleValue(vals[2]));
  std::size_t next = 3;
  std::uint64_t d = 1;
  if (interlaced) {
    need(4);
    d = detail::singleValue(vals[3]);
    if (d < 1) throw ParseError("interlacing factor must be >= 1", vals[3].number);
    next = 4;
  }
  const std::uint64_t inner = s * d;
  if (vals.size() != next + inner) throw ParseError("expected " + std::to_string(inner) + " generating polynomials", vals.back().number);
  PolynomialLatticeRule rule{modulus, {}, kDefaultOutputDigits};
  for (std::size_t j = 0; j < inner; ++j) rule.gen.emplace_back(detail::singleValue(vals[next + j]));
  try {
    if (higher) {
      HigherOrderPlr h{rule, static_cast<int>(k)};
      h.validate();
      if (interlaced) return InterlacedNet{h, static_cast<int>(d)};
      return h;
    }
    if (static_cast<int>(k) != modulus.degree()) throw Error("modulus degree differs from k");
    rule.validate();
    if (interlaced) return InterlacedNet{rule, static_cast<int>(d)};
    return rule;
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(e.what(), vals[2].number);
  }
}

// ---------------------------------------------------------------------------
// Net format

inline std::string emitNetFile(const DigitalNet& net) {
  std::ostringstream out;
  auto field = [&](const std::string& v, const std::string& c) { out << detail::fieldLine(v, 5, c); };
  out << kNetHeader << "\n";
  field(std::to_string(net.dimension()), "s = " + std::to_string(net.dimension()) + " dimensions");
  field(std::to_string(net.k()), "n = 2^" + std::to_string(net.k()) + " = " + std::to_string(net.size()) + " points");
  field(std::to_string(net.w()), "r = " + std::to_string(net.w()) + " binary output digits");
  out << "# Columns of gen. matrices C_1,...,C_s, one matrix per line:\n";
  for (const auto& m : net.matrices()) {
    for (int c = 0; c < m.cols(); ++c) out << (c ? " " : "") << m.column(c);
    out << "\n";
  }
  return out.str();
}

inline DigitalNet parseNetFile(const std::string& text) {
  const auto lines = detail::splitLines(text);
  const auto& head = detail::firstNonBlank(lines);
  if (!head.content.empty() || "# " + head.comment != kNetHeader) throw ParseError("missing digital net header", head.number);
  const auto vals = detail::valueLines(lines);
  if (vals.size() < 3) throw ParseError("truncated net file");
  const auto s = detail::singleValue(vals[0]);
  const auto k = detail::singleValue(vals[1]);
  const auto w = detail::singleValue(vals[2]);
  if (s < 1) throw ParseError("dimension must be >= 1", vals[0].number);
  if (k < 1 || k > kMaxSizeExponent) throw ParseError("k out of range", vals[1].number);
  if (w < k || w > static_cast<std::uint64_t>(GeneratingMatrix::kMaxRows)) throw ParseError("need k <= r <= 63", vals[2].number);
  if (vals.size() != 3 + s) throw ParseError("expected " + std::to_string(s) + " matrix lines", vals.back().number);
  std::vector<GeneratingMatrix> mats;
  const std::uint64_t mask = GeneratingMatrix::rowMask(static_cast<int>(w));
  for (std::size_t j = 0; j < s; ++j) {
    const auto& l = vals[3 + j];
    const auto toks = detail::splitTokens(l.content);
    if (toks.size() != k) throw ParseError("expected " + std::to_string(k) + " column integers", l.number);
    std::vector<std::uint64_t> cols;
    for (const auto& t : toks) {
      const auto v = detail::parseUnsigned(t, l.number);
      if (v & ~mask) throw ParseError("column integer exceeds 2^r", l.number);
      cols.push_back(v);
    }
    mats.push_back(GeneratingMatrix::fromColumns(static_cast<int>(w), cols));
  }
  return DigitalNet(static_cast<int>(k), std::move(mats), NetCheck::ShapeOnly);
}

// ---------------------------------------------------------------------------
// Sobol' format

struct SobolFile {
  SobolSpec spec;
  int s = 1;  // output dimensions
  int d = 1;  // interlacing factor; spec covers s * d inner coordinates
  friend bool operator==(const SobolFile&, const SobolFile&) = default;
};

inline std::string emitSobolFile(const SobolFile& f) {
  f.spec.validate();
  if (f.s < 1 || f.d < 1) throw Error("dimension and interlacing factor must be >= 1");
  if (f.spec.coordinates() < f.s * f.d) throw Error("missing direction numbers");
  if (!f.spec.polynomials.empty()) {
    for (std::size_t t = 0; t < f.spec.directionNumbers.size(); ++t) {
      if (f.spec.polynomials.at(t) != SobolSpec::standardPolynomials(t + 1)[t]) {
        throw Error("the Sobol' format assumes the standard polynomial order; use the net format");
      }
    }
  }
  std::ostringstream out;
  out << kSobolHeader << "\n";
  out << "# s = " << f.s << " dimensions\n";
  if (f.d > 1) out << "# d = " << f.d << " interlacing factor\n";
  const auto inner = static_cast<std::size_t>(f.s * f.d);
  for (std::size_t t = 0; t + 1 < inner; ++t) {
    std::string line;
    for (std::size_t c = 0; c < f.spec.directionNumbers[t].size(); ++c) {
      line += (c ? " " : "") + std::to_string(f.spec.directionNumbers[t][c]);
    }
    if (t == 0) out << detail::fieldLine(line, 5, "This is m_{j,k} for the second coordinate");
    else out << line << "\n";
  }
  return out.str();
}

inline std::string emitSobolFile(const SobolSpec& spec, int s) { return emitSobolFile(SobolFile{spec, s, 1}); }

namespace detail {
inline std::uint64_t checkedDirectionNumber(const std::string& tok, std::size_t c, int line) {
  const auto m = parseUnsigned(tok, line);
  if (m % 2 == 0) throw ParseError("direction number m_" + std::to_string(c + 1) + " is even", line);
  if (c + 1 < 64 && m >= (std::uint64_t{1} << (c + 1))) {
    throw ParseError("direction number m_" + std::to_string(c + 1) + " is not below 2^" + std::to_string(c + 1), line);
  }
  return m;
}
}  // namespace detail

inline SobolFile parseSobolFile(const std::string& text) {
  const auto lines = detail::splitLines(text);
  const auto& head = detail::firstNonBlank(lines);
  if (!head.content.empty() || "# " + head.comment != kSobolHeader) throw ParseError("missing Sobol' header", head.number);
  SobolFile f;
  bool haveS = false;
  for (const auto& l : lines) {
    if (!l.content.empty()) {
      const auto toks = detail::splitTokens(l.content);
      std::vector<std::uint64_t> m;
      for (std::size_t c = 0; c < toks.size(); ++c) m.push_back(detail::checkedDirectionNumber(toks[c], c, l.number));
      f.spec.directionNumbers.push_back(std::move(m));
      continue;
    }
    int v = 0;
    if (std::sscanf(l.comment.c_str(), "s = %d dimensions", &v) == 1) {
      f.s = v;
      haveS = true;
    } else if (std::sscanf(l.comment.c_str(), "d = %d interlacing factor", &v) == 1) {
      f.d = v;
    }
  }
  if (!haveS) f.s = f.spec.coordinates();
  if (f.s < 1 || f.d < 1) throw ParseError("dimension and interlacing factor must be >= 1");
  if (f.spec.coordinates() != f.s * f.d) {
    throw ParseError("expected " + std::to_string(f.s * f.d - 1) + " direction-number lines, found " +
                     std::to_string(f.spec.directionNumbers.size()));
  }
  return f;
}

// Joe-Kuo style table: header "d s a m_i", then per dimension j >= 2 the
// degree s, the interior coefficients a and m_1..m_s.
inline SobolSpec parseJoeKuoFile(const std::string& text, int maxDimension = 0) {
  SobolSpec spec;
  const auto lines = detail::splitLines(text);
  bool header = true;
  for (const auto& l : lines) {
    if (l.content.empty()) continue;
    const auto toks = detail::splitTokens(l.content);
    if (header) {
      header = false;
      if (!toks.empty() && !std::isdigit(static_cast<unsigned char>(toks[0][0]))) continue;
    }
    if (toks.size() < 3) throw ParseError("expected 'd s a m_1 ... m_s'", l.number);
    const auto dim = detail::parseUnsigned(toks[0], l.number);
    if (maxDimension > 0 && dim > static_cast<std::uint64_t>(maxDimension)) break;
    const auto deg = detail::parseUnsigned(toks[1], l.number);
    const auto a = detail::parseUnsigned(toks[2], l.number);
    if (deg < 1 || deg > 62) throw ParseError("polynomial degree out of range", l.number);
    if (toks.size() != 3 + deg) throw ParseError("expected " + std::to_string(deg) + " direction numbers", l.number);
    if (dim != spec.directionNumbers.size() + 2) throw ParseError("dimensions must be listed in order from 2", l.number);
    if (deg > 1 && a >= (std::uint64_t{1} << (deg - 1))) throw ParseError("coefficient word a out of range", l.number);
    spec.polynomials.emplace_back((std::uint64_t{1} << deg) | (a << 1) | 1U);
    std::vector<std::uint64_t> m;
    for (std::size_t c = 0; c < deg; ++c) m.push_back(detail::checkedDirectionNumber(toks[3 + c], c, l.number));
    spec.directionNumbers.push_back(std::move(m));
  }
  return spec;
}

// Any parameter file, recognized by its header. Sobol' files do not record
// the size, so `sobolK` supplies k for them.
inline PointSetDef parseParameterFile(const std::string& text, std::optional<int> sobolK = std::nullopt) {
  const auto lines = detail::splitLines(text);
  const std::string header = "# " + detail::firstNonBlank(lines).comment;
  if (header == kNetHeader) return parseNetFile(text);
  if (header == kSobolHeader) {
    if (!sobolK) throw Error("Sobol' parameter files need the size exponent k");
    const auto f = parseSobolFile(text);
    SobolNet net{f.spec, f.s * f.d, *sobolK, 0};
    if (f.d > 1) return InterlacedNet{net, f.d};
    return net;
  }
  return parseLatticeFile(text);
}

// ---------------------------------------------------------------------------
// Grammars

namespace detail {
inline std::vector<double> realList(const std::string& s) {
  std::vector<double> out;
  if (trim(s).empty()) return out;
  for (const auto& t : splitOn(s, ',')) out.push_back(parseReal(t));
  return out;
}
}  // namespace detail

// "product:g1,g2,..." | "product:default:g1,..."
// "order-dependent:default,G1,G2,..." | "order-dependent:default:G1,G2,..."
// "POD:G1,...:g1,..." | "POD:default:G1,...:g1,..."
// "explicit:{1,2}=0.5;{3}=1" (coordinates 1-based)
inline WeightSpec parseWeights(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw ParseError("weights need the form kind:values, got '" + text + "'");
  const std::string kind = text.substr(0, colon);
  const std::string rest = text.substr(colon + 1);
  const auto parts = detail::splitOn(rest, ':');
  if (kind == "product") {
    if (parts.size() == 1) return WeightSpec::product(detail::realList(parts[0]));
    if (parts.size() == 2) return WeightSpec::product(detail::realList(parts[1]), detail::parseReal(parts[0]));
    throw ParseError("product weights: product:g1,... or product:default:g1,...");
  }
  if (kind == "order-dependent") {
    if (parts.size() == 1) {
      auto v = detail::realList(parts[0]);
      if (v.empty()) throw ParseError("order-dependent weights need values");
      const double def = v.front();
      v.erase(v.begin());
      return WeightSpec::orderDependent(v, def);
    }
    if (parts.size() == 2) return WeightSpec::orderDependent(detail::realList(parts[1]), detail::parseReal(parts[0]));
    throw ParseError("order-dependent weights: order-dependent:default,G1,... or order-dependent:default:G1,...");
  }
  if (kind == "POD") {
    if (parts.size() == 2) return WeightSpec::pod(detail::realList(parts[0]), detail::realList(parts[1]));
    if (parts.size() == 3) return WeightSpec::pod(detail::realList(parts[1]), detail::realList(parts[2]), detail::parseReal(parts[0]));
    throw ParseError("POD weights: POD:G1,...:g1,... or POD:default:G1,...:g1,...");
  }
  if (kind == "explicit") {
    std::map<Subset, double> m;
    for (const auto& item : detail::splitOn(rest, ';')) {
      const std::string it = detail::trim(item);
      if (it.empty()) continue;
      const auto close = it.find('}');
      const auto eq = it.find('=', close == std::string::npos ? 0 : close);
      if (it.front() != '{' || close == std::string::npos || eq == std::string::npos) {
        throw ParseError("explicit weight items look like {1,2}=0.5, got '" + it + "'");
      }
      Subset u;
      for (const auto& c : detail::splitOn(it.substr(1, close - 1), ',')) {
        const auto j = detail::parseUnsigned(detail::trim(c), 0);
        if (j < 1) throw ParseError("coordinates are numbered from 1");
        u.push_back(static_cast<int>(j) - 1);
      }
      m[u] = detail::parseReal(it.substr(eq + 1));
    }
    return WeightSpec::explicitMap(m);
  }
  throw ParseError("unknown weight kind '" + kind + "'");
}

inline double parseNormExponent(const std::string& text) {
  const double q = detail::parseReal(text);
  if (!(q >= 1.0)) throw ParseError("norm exponent q must be >= 1 or inf");
  return q;
}

// Criterion name; `lattice` selects the meaning of the CU: alias (P_alpha for
// ordinary lattices, P~_alpha for digital nets).
inline FomSpec parseFom(const std::string& text, bool lattice) {
  FomSpec f;
  std::string t = text;
  if (t.rfind("CU:", 0) == 0) {
    t = t.substr(3);
    if (t.size() < 2 || t[0] != 'P') throw ParseError("unknown coordinate-uniform criterion '" + text + "'");
    f.alpha = detail::parseReal(t.substr(1));
    f.family = lattice ? FomFamily::Palpha : FomFamily::PalphaTilde;
    return f;
  }
  auto interlaced = [&](FomFamily fam) {
    const auto parts = detail::splitOn(t, ':');
    if (parts.size() != 3) throw ParseError(parts[0] + " needs the form " + parts[0] + ":alpha:d");
    f.family = fam;
    f.alpha = detail::parseReal(parts[1]);
    f.d = static_cast<int>(detail::parseUnsigned(parts[2], 0));
    f.q = fam == FomFamily::IAlphaDc ? 2.0 : 1.0;
    return f;
  };
  if (t.rfind("IA:", 0) == 0) return interlaced(FomFamily::IAlphaDa);
  if (t.rfind("IB:", 0) == 0) return interlaced(FomFamily::IAlphaDb);
  if (t.rfind("IC:", 0) == 0) return interlaced(FomFamily::IAlphaDc);
  if (t == "sobolev1") {
    f.family = FomFamily::Sobolev1;
    return f;
  }
  if (t == "R2prime") {
    f.family = FomFamily::R2prime;
    f.q = 1.0;
    return f;
  }
  if (t == "t-bound") {
    f.family = FomFamily::TValueBound;
    f.q = 1.0;
    return f;
  }
  if (t == "projdep:t-value") {
    f.family = FomFamily::TValueRaw;
    f.q = 1.0;
    return f;
  }
  if (t.size() >= 2 && t[0] == 'P') {
    const bool tilde = t.size() > 6 && t.substr(t.size() - 5) == "tilde";
    f.family = tilde ? FomFamily::PalphaTilde : FomFamily::Palpha;
    f.alpha = detail::parseReal(t.substr(1, tilde ? t.size() - 6 : std::string::npos));
    return f;
  }
  throw ParseError("unknown criterion '" + text + "'");
}

inline std::string fomName(const FomSpec& f) {
  std::ostringstream out;
  out << std::defaultfloat;
  switch (f.family) {
    case FomFamily::Palpha: out << "P" << f.alpha; break;
    case FomFamily::PalphaTilde: out << "P" << f.alpha << "tilde"; break;
    case FomFamily::Sobolev1: out << "sobolev1"; break;
    case FomFamily::IAlphaDa: out << "IA:" << f.alpha << ":" << f.d; break;
    case FomFamily::IAlphaDb: out << "IB:" << f.alpha << ":" << f.d; break;
    case FomFamily::IAlphaDc: out << "IC:" << f.alpha << ":" << f.d; break;
    case FomFamily::R2prime: out << "R2prime"; break;
    case FomFamily::TValueBound: out << "t-bound"; break;
    case FomFamily::TValueRaw: out << "projdep:t-value"; break;
  }
  return out.str();
}

inline ExplorationMethod parseExploration(const std::string& text) {
  const auto parts = detail::splitOn(text, ':');
  const auto& name = parts[0];
  auto count = [&](std::size_t i) {
    if (parts.size() <= i) throw ParseError(name + " needs a sample count, e.g. " + name + ":100");
    const auto r = detail::parseUnsigned(parts[i], 0);
    if (r < 1) throw ParseError("sample count must be >= 1");
    return r;
  };
  auto arity = [&](std::size_t n) {
    if (parts.size() != n) throw ParseError("malformed exploration method '" + text + "'");
  };
  if (name == "exhaustive") return arity(1), ExplorationMethod::exhaustive();
  if (name == "full-CBC") return arity(1), ExplorationMethod::fullCbc();
  if (name == "fast-CBC") return arity(1), ExplorationMethod::fastCbc();
  if (name == "Korobov") return arity(1), ExplorationMethod::korobov();
  if (name == "random") return arity(2), ExplorationMethod::random(count(1));
  if (name == "random-CBC") return arity(2), ExplorationMethod::randomCbc(count(1));
  if (name == "random-Korobov") return arity(2), ExplorationMethod::randomKorobov(count(1));
  if (name == "mixed-CBC") {
    arity(3);
    const auto r = count(1);
    const auto pivot = detail::parseUnsigned(parts[2], 0);
    return ExplorationMethod::mixedCbc(r, static_cast<int>(pivot));
  }
  throw ParseError("unknown exploration method '" + text + "'");
}

inline std::string explorationName(const ExplorationMethod& m) {
  using T = ExplorationMethod::Tag;
  switch (m.tag) {
    case T::Exhaustive: return "exhaustive";
    case T::Random: return "random:" + std::to_string(m.r);
    case T::FullCbc: return "full-CBC";
    case T::FastCbc: return "fast-CBC";
    case T::RandomCbc: return "random-CBC:" + std::to_string(m.r);
    case T::Korobov: return "Korobov";
    case T::RandomKorobov: return "random-Korobov:" + std::to_string(m.r);
    case T::MixedCbc: return "mixed-CBC:" + std::to_string(m.r) + ":" + std::to_string(m.pivot);
  }
  return "?";
}

struct SizeSpec {
  std::uint64_t n = 0;
  std::optional<int> k;  // set for "2^k"
};

inline SizeSpec parseSize(const std::string& text) {
  if (text.rfind("2^", 0) == 0) {
    const auto k = detail::parseUnsigned(text.substr(2), 0);
    if (k > 62) throw ParseError("size exponent too large");
    return {std::uint64_t{1} << k, static_cast<int>(k)};
  }
  const auto n = detail::parseUnsigned(text, 0);
  if (n < 1) throw ParseError("size must be >= 1");
  SizeSpec s{n, std::nullopt};
  if (std::has_single_bit(n)) s.k = std::countr_zero(n);
  return s;
}

}  // namespace qmcforge
