#include "stseq/io.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

namespace stseq {
namespace {

bool is_comment_or_blank(const std::string& line) {
  for (char ch : line) {
    if (ch == '#') return true;
    if (!std::isspace(static_cast<unsigned char>(ch))) return false;
  }
  return true;  // blank
}

// Splits into whitespace-separated tokens.
std::vector<std::string> tokens_of(const std::string& line) {
  std::istringstream is(line);
  std::vector<std::string> toks;
  std::string t;
  while (is >> t) toks.push_back(t);
  return toks;
}

long parse_integer(const std::string& tok, int line) {
  std::size_t used = 0;
  long value = 0;
  try {
    value = std::stol(tok, &used);
  } catch (const std::exception&) {
    throw ParseError(line, "expected integer, got '" + tok + "'");
  }
  if (used != tok.size())
    throw ParseError(line, "expected integer, got '" + tok + "'");
  return value;
}

Point parse_point(const std::string& tok, int v, int line) {
  const long value = parse_integer(tok, line);
  if (value < 0 || value >= v) {
    throw ParseError(line, "point " + tok + " out of range [0, " +
                               std::to_string(v) + ")");
  }
  return static_cast<Point>(value);
}

// key=value tokens from a comment line; everything else is ignored.
void parse_meta_tokens(const std::string& line, SequencingMeta& meta,
                       int line_no) {
  std::string body = line;
  std::replace(body.begin(), body.end(), '#', ' ');
  for (const std::string& tok : tokens_of(body)) {
    const auto eq = tok.find('=');
    if (eq == std::string::npos) continue;
    const std::string key = tok.substr(0, eq);
    const std::string value = tok.substr(eq + 1);
    if (key == "method") {
      meta.method = value;
    } else if (key == "ell") {
      meta.ell = static_cast<int>(parse_integer(value, line_no));
    } else if (key == "seed") {
      meta.seed = static_cast<std::uint64_t>(parse_integer(value, line_no));
    }
  }
}

}  // namespace

TripleSystem load_design(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  int line_no = 0;

  TripleSystem system;
  bool header_seen = false;
  long declared_blocks = 0;
  std::set<Block> seen;

  while (std::getline(is, line)) {
    ++line_no;
    if (is_comment_or_blank(line)) continue;
    const auto toks = tokens_of(line);

    if (!header_seen) {
      if (toks.size() != 3)
        throw ParseError(line_no, "expected header '<kind> <v> <b>'");
      if (toks[0] == "sts") {
        system.kind = SystemKind::sts;
      } else if (toks[0] == "psts") {
        system.kind = SystemKind::psts;
      } else {
        throw ParseError(line_no, "unknown kind '" + toks[0] +
                                      "' (expected sts or psts)");
      }
      const long v = parse_integer(toks[1], line_no);
      declared_blocks = parse_integer(toks[2], line_no);
      if (v < 1) throw ParseError(line_no, "v must be >= 1");
      // dense v*v tables downstream; keep hostile inputs out
      if (v > 10000) throw ParseError(line_no, "v too large (max 10000)");
      if (declared_blocks < 0)
        throw ParseError(line_no, "block count must be >= 0");
      system.v = static_cast<int>(v);
      header_seen = true;
      continue;
    }

    if (static_cast<long>(system.blocks.size()) == declared_blocks)
      throw ParseError(line_no, "more block lines than declared in header");
    if (toks.size() != 3)
      throw ParseError(line_no, "expected three points per block line");
    const Point a = parse_point(toks[0], system.v, line_no);
    const Point b = parse_point(toks[1], system.v, line_no);
    const Point c = parse_point(toks[2], system.v, line_no);
    if (!(a < b && b < c))
      throw ParseError(line_no,
                       "block must be in strictly increasing order");
    const Block blk(a, b, c);
    if (!seen.insert(blk).second)
      throw ParseError(line_no, "duplicate block " + to_string(blk));
    system.blocks.push_back(blk);
  }

  if (!header_seen) throw ParseError(line_no + 1, "missing header line");
  if (static_cast<long>(system.blocks.size()) != declared_blocks) {
    throw ParseError(line_no + 1,
                     "header declares " + std::to_string(declared_blocks) +
                         " blocks, found " +
                         std::to_string(system.blocks.size()));
  }
  return system;
}

std::string store_design(const TripleSystem& system,
                         const std::string& comment) {
  std::ostringstream os;
  if (!comment.empty()) os << "# " << comment << "\n";
  os << to_string(system.kind) << ' ' << system.v << ' '
     << system.blocks.size() << "\n";
  for (const Block& blk : system.blocks)
    os << blk.pts[0] << ' ' << blk.pts[1] << ' ' << blk.pts[2] << "\n";
  return os.str();
}

Sequencing load_sequencing(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  int line_no = 0;

  Sequencing seq;
  bool order_seen = false;
  while (std::getline(is, line)) {
    ++line_no;
    if (is_comment_or_blank(line)) {
      parse_meta_tokens(line, seq.meta, line_no);
      continue;
    }
    if (order_seen)
      throw ParseError(line_no, "unexpected second sequencing line");
    const auto toks = tokens_of(line);
    const int v = static_cast<int>(toks.size());
    for (const std::string& tok : toks)
      seq.order.push_back(parse_point(tok, v, line_no));
    if (!is_permutation_of(seq.order, v))
      throw ParseError(line_no, "not a permutation of [0, " +
                                    std::to_string(v) + ")");
    order_seen = true;
  }
  if (!order_seen) throw ParseError(line_no + 1, "missing sequencing line");
  return seq;
}

std::string store_sequencing(const Sequencing& seq) {
  std::ostringstream os;
  for (std::size_t i = 0; i < seq.order.size(); ++i) {
    if (i) os << ' ';
    os << seq.order[i];
  }
  os << "\n";
  const SequencingMeta& m = seq.meta;
  if (!m.method.empty() || m.ell != 0 || m.seed) {
    os << "#";
    if (!m.method.empty()) os << " method=" << m.method;
    if (m.ell != 0) os << " ell=" << m.ell;
    if (m.seed) os << " seed=" << *m.seed;
    os << "\n";
  }
  return os.str();
}

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void spit(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << text;
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace

TripleSystem read_design_file(const std::string& path) {
  try {
    return load_design(slurp(path));
  } catch (const ParseError& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
}

void write_design_file(const std::string& path, const TripleSystem& system,
                       const std::string& comment) {
  spit(path, store_design(system, comment));
}

Sequencing read_sequencing_file(const std::string& path) {
  try {
    return load_sequencing(slurp(path));
  } catch (const ParseError& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
}

void write_sequencing_file(const std::string& path, const Sequencing& seq) {
  spit(path, store_sequencing(seq));
}

}  // namespace stseq
