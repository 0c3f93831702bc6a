#include "tbc/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

#include "tbc/error.hpp"

namespace tbc::io {

namespace {

struct Token {
  std::string text;
  std::size_t line;
  std::size_t column;
};

// Whitespace-separated tokens with comments removed; commas also separate.
std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> out;
  std::size_t line = 1, col = 1;
  bool comment = false;
  Token cur{"", 0, 0};
  auto flush = [&] {
    if (!cur.text.empty()) out.push_back(cur);
    cur.text.clear();
  };
  for (char c : text) {
    if (c == '\n') {
      flush();
      comment = false;
      ++line;
      col = 1;
      continue;
    }
    if (c == '#') comment = true;
    if (comment || std::isspace(static_cast<unsigned char>(c)) || c == ',') {
      flush();
    } else {
      if (cur.text.empty()) {
        cur.line = line;
        cur.column = col;
      }
      cur.text.push_back(c);
    }
    ++col;
  }
  flush();
  return out;
}

[[noreturn]] void fail(const std::string& what, const Token& t) {
  throw ParseError(what, t.line, t.column);
}

unsigned parse_uint(const Token& t, std::string_view digits, unsigned limit) {
  unsigned v = 0;
  const auto* first = digits.data();
  const auto* last = digits.data() + digits.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || digits.empty())
    fail("expected a decimal integer, got '" + t.text + "'", t);
  if (v > limit) fail("value " + std::to_string(v) + " exceeds " + std::to_string(limit), t);
  return v;
}

// Header "<key>=<int>", possibly split as "<key>", "=", "<int>" or similar.
unsigned parse_header(const std::vector<Token>& toks, std::size_t& pos, char key, unsigned limit) {
  if (toks.empty()) throw ParseError(std::string("missing '") + key + "=' header", 1, 1);
  std::string joined;
  const Token first = toks[pos];
  while (pos < toks.size() && toks[pos].line == first.line) joined += toks[pos++].text;
  if (joined.size() < 3 || joined[0] != key || joined[1] != '=')
    fail(std::string("expected header '") + key + "=<int>'", first);
  return parse_uint(first, std::string_view(joined).substr(2), limit);
}

int hex_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

std::string trim(std::string_view s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return std::string(s.substr(a, b - a));
}

}  // namespace

SBox parse_sbox(std::string_view text) {
  const auto toks = tokenize(text);
  std::size_t pos = 0;
  const unsigned m = parse_header(toks, pos, 'm', kMaxSBoxWidth);
  if (m < 2) fail("S-box width must be at least 2", toks.front());
  const std::size_t size = std::size_t{1} << m;
  const Token end{"", toks.back().line, toks.back().column + toks.back().text.size()};
  if (pos == toks.size()) fail("missing S-box table", end);

  std::vector<std::uint32_t> table;
  const Token& body = toks[pos];
  const bool single = toks.size() - pos == 1;
  if (single && size > 1 && body.text.size() == size &&
      std::all_of(body.text.begin(), body.text.end(), [](char c) { return hex_value(c) >= 0; }) &&
      m == 4) {
    for (char c : body.text) table.push_back(static_cast<std::uint32_t>(hex_value(c)));
  } else {
    if (single && m != 4 && body.text.size() == size &&
        std::any_of(body.text.begin(), body.text.end(), [](char c) { return std::isalpha(c); }))
      fail("hex shorthand is only accepted for m=4", body);
    for (std::size_t i = pos; i < toks.size(); ++i) {
      if (table.size() == size) fail("too many table entries (expected " + std::to_string(size) + ")", toks[i]);
      table.push_back(parse_uint(toks[i], toks[i].text, static_cast<unsigned>(size - 1)));
    }
    if (table.size() != size)
      fail("expected " + std::to_string(size) + " table entries, got " +
               std::to_string(table.size()),
           end);
  }
  try {
    return SBox(m, std::move(table));
  } catch (const DomainError& e) {
    fail(std::string("invalid S-box: ") + e.what(), body);
  }
}

LinearLayer parse_layer(std::string_view text) {
  const auto toks = tokenize(text);
  std::size_t pos = 0;
  const unsigned d = parse_header(toks, pos, 'd', gf2::kMaxDim);
  if (d == 0) fail("layer dimension must be positive", toks.front());
  const Token end{"", toks.back().line, toks.back().column + toks.back().text.size()};
  if (pos == toks.size()) fail("expected 'perm:' or 'matrix:'", end);
  const Token& kind = toks[pos++];
  if (kind.text == "perm:") {
    std::vector<unsigned> perm;
    std::vector<bool> seen(d, false);
    for (; pos < toks.size(); ++pos) {
      if (perm.size() == d) fail("too many permutation entries", toks[pos]);
      const unsigned v = parse_uint(toks[pos], toks[pos].text, d - 1);
      if (seen[v]) fail("image " + std::to_string(v) + " repeated", toks[pos]);
      seen[v] = true;
      perm.push_back(v);
    }
    if (perm.size() != d)
      fail("expected " + std::to_string(d) + " permutation entries, got " +
               std::to_string(perm.size()),
           end);
    return LinearLayer::from_bit_permutation(std::move(perm));
  }
  if (kind.text == "matrix:") {
    std::vector<gf2::Word> rows;
    for (; pos < toks.size(); ++pos) {
      const Token& t = toks[pos];
      if (rows.size() == d) fail("too many matrix rows", t);
      if (t.text.size() != d)
        fail("matrix row must have " + std::to_string(d) + " characters", t);
      gf2::Word w = 0;
      for (unsigned j = 0; j < d; ++j) {
        if (t.text[j] == '1')
          w |= gf2::Word{1} << j;
        else if (t.text[j] != '0')
          throw ParseError("matrix entries must be 0 or 1", t.line, t.column + j);
      }
      rows.push_back(w);
    }
    if (rows.size() != d)
      fail("expected " + std::to_string(d) + " matrix rows, got " + std::to_string(rows.size()),
           end);
    try {
      return LinearLayer(gf2::Matrix::from_rows(d, std::move(rows)));
    } catch (const DomainError& e) {
      fail(std::string("invalid layer: ") + e.what(), kind);
    }
  }
  fail("expected 'perm:' or 'matrix:', got '" + kind.text + "'", kind);
}

std::string serialize_sbox(const SBox& f) {
  std::ostringstream os;
  os << "m=" << f.width() << "\n";
  if (f.width() == 4) {
    static const char* digits = "0123456789ABCDEF";
    for (auto v : f.table()) os << digits[v];
    os << "\n";
    return os.str();
  }
  for (std::size_t i = 0; i < f.table().size(); ++i)
    os << f.table()[i] << ((i % 16 == 15 || i + 1 == f.table().size()) ? "\n" : " ");
  return os.str();
}

std::string serialize_layer(const LinearLayer& layer) {
  std::ostringstream os;
  const unsigned d = layer.dim();
  os << "d=" << d << "\n";
  if (const auto& perm = layer.bit_permutation()) {
    os << "perm:\n";
    for (unsigned i = 0; i < d; ++i) os << (*perm)[i] << ((i % 16 == 15 || i + 1 == d) ? "\n" : " ");
    return os.str();
  }
  os << "matrix:\n";
  for (unsigned i = 0; i < d; ++i) {
    for (unsigned j = 0; j < d; ++j) os << (layer.matrix().get(i, j) ? '1' : '0');
    os << "\n";
  }
  return os.str();
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

SBox load_sbox(const std::filesystem::path& path, bool msb0) {
  SBox f = parse_sbox(read_file(path));
  return msb0 ? reverse_bit_order(f) : f;
}

LinearLayer load_layer(const std::filesystem::path& path, bool msb0) {
  LinearLayer l = parse_layer(read_file(path));
  return msb0 ? reverse_bit_order(l) : l;
}

SpecFile parse_spec(std::string_view text, const std::filesystem::path& base_dir, bool msb0) {
  std::map<std::string, std::pair<std::string, Token>> entries;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t nl = text.find('\n', start);
    std::string_view line = text.substr(start, nl == std::string_view::npos ? text.npos : nl - start);
    ++line_no;
    start = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    if (auto hash = line.find('#'); hash != line.npos) line = line.substr(0, hash);
    if (trim(line).empty()) continue;
    const auto colon = line.find(':');
    if (colon == line.npos) throw ParseError("expected 'key: value'", line_no, 1);
    const std::string key = trim(line.substr(0, colon));
    const std::string value = trim(line.substr(colon + 1));
    const Token at{key, line_no, 1};
    static const char* known[] = {"m", "n", "bricks", "layer", "key_schedule_surjective",
                                  "desk_layer"};
    if (std::find(std::begin(known), std::end(known), key) == std::end(known))
      fail("unknown key '" + key + "'", at);
    if (entries.count(key)) fail("duplicate key '" + key + "'", at);
    if (value.empty()) fail("empty value for '" + key + "'", Token{key, line_no, colon + 2});
    entries.emplace(key, std::make_pair(value, at));
  }
  auto need = [&](const std::string& key) -> const std::pair<std::string, Token>& {
    auto it = entries.find(key);
    if (it == entries.end()) throw ParseError("missing key '" + key + "'", line_no, 1);
    return it->second;
  };
  const auto& [m_text, m_tok] = need("m");
  const auto& [n_text, n_tok] = need("n");
  const unsigned m = parse_uint(m_tok, m_text, kMaxSBoxWidth);
  const unsigned n = parse_uint(n_tok, n_text, gf2::kMaxDim);

  bool surjective = true;
  if (auto it = entries.find("key_schedule_surjective"); it != entries.end()) {
    if (it->second.first == "true")
      surjective = true;
    else if (it->second.first == "false")
      surjective = false;
    else
      fail("key_schedule_surjective must be true or false", it->second.second);
  }

  auto resolve = [&](const std::string& p) {
    std::filesystem::path path(p);
    return path.is_absolute() ? path : base_dir / path;
  };
  std::vector<std::filesystem::path> brick_paths;
  std::vector<SBox> bricks;
  const auto& [b_text, b_tok] = need("bricks");
  for (const auto& t : tokenize(b_text)) {
    brick_paths.push_back(resolve(t.text));
    bricks.push_back(load_sbox(brick_paths.back(), msb0));
  }
  const auto& [l_text, l_tok] = need("layer");
  const auto layer_path = resolve(l_text);
  LinearLayer layer = load_layer(layer_path, msb0);

  std::optional<std::filesystem::path> desk_path;
  std::optional<LinearLayer> desk;
  if (auto it = entries.find("desk_layer"); it != entries.end()) {
    desk_path = resolve(it->second.first);
    desk = load_layer(*desk_path, msb0);
  }
  try {
    CipherSpec spec(m, n, std::move(bricks), std::move(layer), surjective);
    spec.desk_layer = std::move(desk);
    return SpecFile{std::move(spec), std::move(brick_paths), layer_path, desk_path};
  } catch (const DimensionError& e) {
    fail(e.what(), m_tok);
  } catch (const DomainError& e) {
    fail(e.what(), b_tok);
  }
}

SpecFile load_spec(const std::filesystem::path& path, bool msb0) {
  return parse_spec(read_file(path), path.parent_path(), msb0);
}

SBox reverse_bit_order(const SBox& f) {
  const unsigned m = f.width();
  auto rev = [m](std::uint32_t x) {
    std::uint32_t r = 0;
    for (unsigned i = 0; i < m; ++i)
      if ((x >> i) & 1u) r |= 1u << (m - 1 - i);
    return r;
  };
  std::vector<std::uint32_t> t(f.size());
  for (std::uint32_t x = 0; x < f.size(); ++x) t[rev(x)] = rev(f(x));
  return SBox(m, std::move(t));
}

LinearLayer reverse_bit_order(const LinearLayer& layer) {
  const unsigned d = layer.dim();
  gf2::Matrix out(d, d);
  for (unsigned i = 0; i < d; ++i)
    for (unsigned j = 0; j < d; ++j)
      if (layer.matrix().get(i, j)) out.set(d - 1 - i, d - 1 - j, true);
  return LinearLayer(std::move(out));
}

std::string fnv1a_hex(std::string_view data) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  static const char* digits = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i, h >>= 4) out[static_cast<std::size_t>(i)] = digits[h & 0xF];
  return out;
}

}  // namespace tbc::io
