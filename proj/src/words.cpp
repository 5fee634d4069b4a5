#include "fgr/words.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <mutex>
#include <shared_mutex>
#include <unordered_map>

namespace fgr {

namespace {

struct SymbolTable {
  std::shared_mutex mu;
  std::deque<std::string> names;
  std::unordered_map<std::string, std::uint32_t> ids;
};

SymbolTable& table() {
  static SymbolTable t;
  return t;
}

// Splits UTF-8 text into code points (as byte strings).
std::vector<std::string> code_points(std::string_view s) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < s.size()) {
    auto c = static_cast<unsigned char>(s[i]);
    std::size_t n = 1;
    if (c >= 0xF0) n = 4;
    else if (c >= 0xE0) n = 3;
    else if (c >= 0xC0) n = 2;
    if (i + n > s.size()) throw Error("malformed UTF-8 in word text");
    out.emplace_back(s.substr(i, n));
    i += n;
  }
  return out;
}

bool is_lower_ascii(const std::string& name) {
  return name.size() == 1 && name[0] >= 'a' && name[0] <= 'z';
}

bool is_single_code_point(const std::string& name) {
  if (name.empty()) return false;
  auto c = static_cast<unsigned char>(name[0]);
  if (c < 0x80) return name.size() == 1 && std::isalpha(c);
  return code_points(name).size() == 1;
}

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

}  // namespace

Symbol Symbol::intern(std::string_view name) {
  if (name.empty()) throw Error("empty generator name");
  auto& t = table();
  std::string key(name);
  {
    std::shared_lock lock(t.mu);
    auto it = t.ids.find(key);
    if (it != t.ids.end()) return Symbol(it->second);
  }
  std::unique_lock lock(t.mu);
  auto it = t.ids.find(key);
  if (it != t.ids.end()) return Symbol(it->second);
  auto id = static_cast<std::uint32_t>(t.names.size());
  t.names.push_back(key);
  t.ids.emplace(key, id);
  return Symbol(id);
}

const std::string& Symbol::name() const {
  auto& t = table();
  std::shared_lock lock(t.mu);
  // deque never relocates elements, so the reference outlives the lock.
  return t.names.at(id_);
}

bool name_less(Symbol a, Symbol b) {
  if (a == b) return false;
  return a.name() < b.name();
}

bool name_less(Letter a, Letter b) {
  if (a == b) return false;
  if (a.generator() == b.generator()) return !a.inverted();
  return name_less(a.symbol(), b.symbol());
}

std::string to_string(Letter l) {
  return l.inverted() ? "~" + l.symbol().name() : l.symbol().name();
}

Word::Word(std::span<const Letter> raw) : Word(reduce(raw)) {}

Word::Word(std::initializer_list<Letter> raw)
    : Word(reduce(std::span<const Letter>(raw.begin(), raw.size()))) {}

Word Word::inverse() const {
  std::vector<Letter> out;
  out.reserve(letters_.size());
  for (auto it = letters_.rbegin(); it != letters_.rend(); ++it)
    out.push_back(it->inverse());
  return Word(Trusted{}, std::move(out));
}

Word Word::subword(std::size_t pos, std::size_t len) const {
  if (pos + len > letters_.size()) throw Error("subword out of range");
  return Word(Trusted{},
              std::vector<Letter>(letters_.begin() + static_cast<long>(pos),
                                  letters_.begin() + static_cast<long>(pos + len)));
}

Word operator*(const Word& a, const Word& b) { return concat_reduced(a, b); }

Word reduce(std::span<const Letter> raw) {
  std::vector<Letter> out;
  out.reserve(raw.size());
  for (Letter l : raw) {
    if (!l.valid()) throw Error("invalid letter in word");
    if (!out.empty() && out.back() == l.inverse())
      out.pop_back();
    else
      out.push_back(l);
  }
  return Word(Word::Trusted{}, std::move(out));
}

Word concat_reduced(const Word& a, const Word& b) {
  const auto& x = a.letters_;
  const auto& y = b.letters_;
  std::size_t k = 0;
  while (k < x.size() && k < y.size() && x[x.size() - 1 - k] == y[k].inverse()) ++k;
  std::vector<Letter> out(x.begin(), x.end() - static_cast<long>(k));
  out.insert(out.end(), y.begin() + static_cast<long>(k), y.end());
  return Word(Word::Trusted{}, std::move(out));
}

Letter tau(const Word& w) {
  if (w.empty()) throw Error("tau undefined on identity");
  return w.back();
}

bool is_cyclically_reduced(const Word& w) {
  return w.size() < 2 || w.front() != w.back().inverse();
}

CyclicDecomposition cyclic_reduce(const Word& w) {
  std::size_t k = 0;
  std::size_t n = w.size();
  while (n >= 2 * k + 2 && w[k] == w[n - 1 - k].inverse()) ++k;
  return {w.subword(0, k), w.subword(k, n - 2 * k)};
}

CancellationSplit cancellation_split(const Word& u, const Word& v) {
  if (u.empty() || v.empty())
    throw Error("cancellation_split requires nontrivial words");
  std::size_t k = 0;
  while (k < u.size() && k < v.size() &&
         u[u.size() - 1 - k] == v[v.size() - 1 - k])
    ++k;
  CancellationSplit s;
  s.t = u.subword(u.size() - k, k);
  s.u0 = u.subword(0, u.size() - k);
  s.v0 = v.subword(0, v.size() - k);
  if (k == 0) s.kind = 1;
  else if (s.u0.empty() && s.v0.empty()) s.kind = 5;
  else if (s.v0.empty()) s.kind = 3;
  else if (s.u0.empty()) s.kind = 4;
  else s.kind = 2;
  return s;
}

Word image_of(Letter l, const Images& images) {
  auto it = images.find(l.generator());
  if (it == images.end())
    throw Error("no image for generator " + l.generator().symbol().name());
  return l.inverted() ? it->second.inverse() : it->second;
}

Word substitute(const Word& w, const Images& images) {
  std::vector<Letter> raw;
  for (Letter l : w) {
    auto img = image_of(l, images);
    raw.insert(raw.end(), img.begin(), img.end());
  }
  return reduce(raw);
}

std::vector<Letter> generators_of(const Word& w) {
  std::vector<Letter> g;
  for (Letter l : w) g.push_back(l.generator());
  std::sort(g.begin(), g.end());
  g.erase(std::unique(g.begin(), g.end()), g.end());
  return g;
}

Letter parse_letter(std::string_view token) {
  auto t = trim(token);
  bool inv = false;
  if (!t.empty() && t[0] == '~') {
    inv = true;
    t = trim(std::string_view(t).substr(1));
  }
  if (t.empty()) throw Error("empty letter token");
  for (char c : t)
    if (c == ',' || c == '~' || std::isspace(static_cast<unsigned char>(c)))
      throw Error("bad letter token '" + std::string(token) + "'");
  return Letter::named(t, inv);
}

Word parse_word(std::string_view text) {
  auto s = trim(text);
  if (s.empty() || s == "1") return Word();
  bool tokens = s.find_first_of(",~0123456789") != std::string::npos;
  std::vector<Letter> raw;
  if (tokens) {
    std::size_t start = 0;
    while (true) {
      auto pos = s.find(',', start);
      auto tok = trim(std::string_view(s).substr(
          start, pos == std::string::npos ? std::string::npos : pos - start));
      if (tok.empty()) throw Error("empty token in word '" + s + "'");
      if (tok != "1") raw.push_back(parse_letter(tok));
      if (pos == std::string::npos) break;
      start = pos + 1;
    }
  } else {
    for (const auto& cp : code_points(s)) {
      unsigned char c = static_cast<unsigned char>(cp[0]);
      if (cp.size() == 1) {
        if (c >= 'a' && c <= 'z') raw.push_back(Letter::named(cp));
        else if (c >= 'A' && c <= 'Z')
          raw.push_back(Letter::named(std::string(1, static_cast<char>(c - 'A' + 'a')), true));
        else
          throw Error("bad character '" + cp + "' in word '" + s + "'");
      } else {
        raw.push_back(Letter::named(cp));
      }
    }
  }
  return reduce(raw);
}

std::string to_string(const Word& w) {
  if (w.empty()) return "1";
  bool compact = std::all_of(w.begin(), w.end(), [](Letter l) {
    const auto& n = l.symbol().name();
    if (is_lower_ascii(n)) return true;
    return !l.inverted() && static_cast<unsigned char>(n[0]) >= 0x80 &&
           is_single_code_point(n);
  });
  std::string out;
  if (compact) {
    for (Letter l : w) {
      const auto& n = l.symbol().name();
      out += l.inverted() ? std::string(1, static_cast<char>(n[0] - 'a' + 'A')) : n;
    }
    return out;
  }
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out += ',';
    out += to_string(w[i]);
  }
  return out;
}

std::map<Letter, long> abelianize(const Word& w) {
  std::map<Letter, long> out;
  for (Letter l : w) out[l.generator()] += l.inverted() ? -1 : 1;
  std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
  return out;
}

Letter fresh_letter(const std::function<bool(Letter)>& taken) {
  static const char* base[] = {"t", "s", "r", "q", "p"};
  for (const char* b : base) {
    auto l = Letter::named(b);
    if (!taken(l)) return l;
  }
  for (int i = 1;; ++i) {
    auto l = Letter::named("t" + std::to_string(i));
    if (!taken(l)) return l;
  }
}

}  // namespace fgr
