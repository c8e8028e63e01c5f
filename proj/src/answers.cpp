#include "dialectic/answers.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>

namespace dialectic {

namespace {

std::string to_lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

std::string trim(std::string_view s) {
  size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

// Last case-insensitive occurrence of "the answer is"; npos if none.
size_t last_marker(const std::string& lower) {
  static const std::string kMarker = "the answer is";
  size_t pos = lower.rfind(kMarker);
  return pos == std::string::npos ? std::string::npos : pos + kMarker.size();
}

// Final sentence of the text (used when no marker is present).
std::string final_sentence(std::string_view text) {
  std::string t = trim(text);
  while (!t.empty() && (t.back() == '.' || t.back() == '!' || t.back() == '?')) t.pop_back();
  size_t pos = t.find_last_of(".!?");
  return trim(pos == std::string::npos ? t : t.substr(pos + 1));
}

// Word tokens with surrounding punctuation (incl. parens) stripped.
std::vector<std::string> tokens(std::string_view s) {
  std::vector<std::string> out;
  std::string cur;
  auto flush = [&] {
    while (!cur.empty() && !std::isalnum(static_cast<unsigned char>(cur.front()))) cur.erase(cur.begin());
    while (!cur.empty() && !std::isalnum(static_cast<unsigned char>(cur.back()))) cur.pop_back();
    if (!cur.empty()) out.push_back(cur);
    cur.clear();
  };
  for (char c : s) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      flush();
    } else {
      cur.push_back(c);
    }
  }
  flush();
  return out;
}

std::optional<std::string> bool_keyword(const std::string& tok) {
  std::string t = to_lower(tok);
  if (t == "yes" || t == "true") return std::string("yes");
  if (t == "no" || t == "false") return std::string("no");
  return std::nullopt;
}

std::optional<std::string> canonicalize_boolean(const std::string& raw) {
  std::string lower = to_lower(raw);
  size_t m = last_marker(lower);
  if (m != std::string::npos) {
    for (const auto& tok : tokens(std::string_view(raw).substr(m)))
      if (auto b = bool_keyword(tok)) return b;
  }
  std::optional<std::string> last;
  for (const auto& tok : tokens(final_sentence(raw)))
    if (auto b = bool_keyword(tok)) last = b;
  return last;
}

std::optional<std::string> match_label(const std::string& tok, const std::vector<std::string>& labels) {
  std::string t = to_lower(tok);
  for (const auto& label : labels)
    if (to_lower(label) == t) return label;
  return std::nullopt;
}

std::optional<std::string> canonicalize_categorical(const std::string& raw,
                                                    const std::vector<std::string>& labels) {
  std::string lower = to_lower(raw);
  size_t m = last_marker(lower);
  if (m != std::string::npos) {
    for (const auto& tok : tokens(std::string_view(raw).substr(m)))
      if (auto l = match_label(tok, labels)) return l;
  }
  std::optional<std::string> last;
  for (const auto& tok : tokens(final_sentence(raw)))
    if (auto l = match_label(tok, labels)) last = l;
  if (last) return last;
  // A bare "(A)" style reply has no sentence structure to speak of.
  for (const auto& tok : tokens(raw))
    if (auto l = match_label(tok, labels)) last = l;
  return last;
}

bool parse_number_at(const std::string& s, size_t pos, double& value, size_t& len) {
  size_t i = pos;
  if (i < s.size() && (s[i] == '-' || s[i] == '+')) ++i;
  if (i < s.size() && s[i] == '$') ++i;
  size_t digits_start = i;
  std::string digits;
  bool seen_dot = false;
  while (i < s.size()) {
    char c = s[i];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      digits.push_back(c);
    } else if (c == ',' && i > digits_start && i + 1 < s.size() &&
               std::isdigit(static_cast<unsigned char>(s[i + 1]))) {
      // thousands separator
    } else if (c == '.' && !seen_dot && i + 1 < s.size() &&
               std::isdigit(static_cast<unsigned char>(s[i + 1]))) {
      seen_dot = true;
      digits.push_back('.');
    } else {
      break;
    }
    ++i;
  }
  if (digits.empty() || !std::isdigit(static_cast<unsigned char>(digits[0]))) return false;
  if (pos < s.size() && s[pos] == '-') digits.insert(digits.begin(), '-');
  value = std::strtod(digits.c_str(), nullptr);
  len = i - pos;
  return true;
}

std::string render_number(double v) {
  if (std::floor(v) == v && std::fabs(v) < 1e15) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%lld", static_cast<long long>(v));
    return buf;
  }
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

// First number at or after `from`; when absent, the last number in the text.
std::optional<std::string> extract_number(const std::string& raw, size_t from, bool prefer_first) {
  std::optional<double> found;
  for (size_t i = from; i < raw.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(raw[i])) && raw[i] != '-' && raw[i] != '$') continue;
    if (raw[i] == '-' && (i + 1 >= raw.size() || (!std::isdigit(static_cast<unsigned char>(raw[i + 1])) &&
                                                  raw[i + 1] != '$')))
      continue;
    double v;
    size_t len;
    if (parse_number_at(raw, i, v, len)) {
      found = v;
      if (prefer_first) break;
      i += len - 1;
    }
  }
  if (!found) return std::nullopt;
  return render_number(*found);
}

std::optional<std::string> canonicalize_numeric(const std::string& raw) {
  std::string lower = to_lower(raw);
  size_t m = last_marker(lower);
  if (m != std::string::npos) {
    if (auto n = extract_number(raw, m, /*prefer_first=*/true)) return n;
  }
  return extract_number(raw, 0, /*prefer_first=*/false);
}

std::optional<std::string> canonicalize_free_text(const std::string& raw) {
  std::string lower = to_lower(raw);
  size_t m = last_marker(lower);
  std::string frag = m != std::string::npos ? lower.substr(m) : lower;
  frag = trim(frag);
  while (!frag.empty() && (frag.back() == '.' || frag.back() == '!' || frag.back() == '?')) frag.pop_back();
  // collapse internal whitespace
  std::string out;
  bool in_space = false;
  for (char c : frag) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      in_space = true;
    } else {
      if (in_space && !out.empty()) out.push_back(' ');
      in_space = false;
      out.push_back(c);
    }
  }
  if (out.empty()) return std::nullopt;
  return out;
}

}  // namespace

std::optional<std::string> canonicalize_answer(std::string_view raw, const AnswerSpace& space) {
  std::string text = trim(raw);
  if (text.empty()) return std::nullopt;
  switch (space.kind) {
    case AnswerKind::boolean_: return canonicalize_boolean(text);
    case AnswerKind::categorical: return canonicalize_categorical(text, space.labels);
    case AnswerKind::numeric: return canonicalize_numeric(text);
    case AnswerKind::free_text: return canonicalize_free_text(text);
  }
  return std::nullopt;
}

bool answers_equal(std::string_view a, std::string_view b, const AnswerSpace& space) {
  if (space.kind == AnswerKind::numeric) {
    double va = std::strtod(std::string(a).c_str(), nullptr);
    double vb = std::strtod(std::string(b).c_str(), nullptr);
    return std::fabs(va - vb) <= kNumericTolerance;
  }
  return a == b;
}

}  // namespace dialectic
