#include "slowads/text.hpp"

#include <cstdio>

namespace slowads {

Utf8Char utf8_first(std::string_view s) {
  if (s.empty()) return {0, 0};
  const auto b0 = static_cast<unsigned char>(s[0]);
  std::size_t len = 0;
  char32_t cp = 0;
  if (b0 < 0x80) return {b0, 1};
  if ((b0 & 0xe0) == 0xc0) {
    len = 2;
    cp = b0 & 0x1f;
  } else if ((b0 & 0xf0) == 0xe0) {
    len = 3;
    cp = b0 & 0x0f;
  } else if ((b0 & 0xf8) == 0xf0) {
    len = 4;
    cp = b0 & 0x07;
  } else {
    return {b0, 1};  // stray continuation or invalid lead byte
  }
  if (s.size() < len) return {b0, 1};
  for (std::size_t i = 1; i < len; ++i) {
    const auto b = static_cast<unsigned char>(s[i]);
    if ((b & 0xc0) != 0x80) return {b0, 1};
    cp = (cp << 6) | (b & 0x3f);
  }
  return {cp, len};
}

void utf8_append(std::string& out, char32_t cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xc0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3f)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xe0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3f)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3f)));
  } else {
    out.push_back(static_cast<char>(0xf0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3f)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3f)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3f)));
  }
}

std::vector<char32_t> utf8_codepoints(std::string_view s) {
  std::vector<char32_t> out;
  out.reserve(s.size());
  while (!s.empty()) {
    const Utf8Char c = utf8_first(s);
    out.push_back(c.cp);
    s.remove_prefix(c.bytes);
  }
  return out;
}

bool is_space_cp(char32_t cp) {
  switch (cp) {
    case 0x09: case 0x0a: case 0x0b: case 0x0c: case 0x0d:
    case 0x1c: case 0x1d: case 0x1e: case 0x1f:
    case 0x20: case 0x85: case 0xa0: case 0x1680:
    case 0x2028: case 0x2029: case 0x202f: case 0x205f: case 0x3000:
      return true;
    default:
      return cp >= 0x2000 && cp <= 0x200a;
  }
}

bool is_punct_cp(char32_t cp) {
  if (cp < 0x80) {
    return (cp >= 0x21 && cp <= 0x2f) || (cp >= 0x3a && cp <= 0x40) ||
           (cp >= 0x5b && cp <= 0x60) || (cp >= 0x7b && cp <= 0x7e);
  }
  switch (cp) {
    case 0xa1: case 0xa7: case 0xab: case 0xb6: case 0xb7: case 0xbb: case 0xbf:
    case 0x060c: case 0x061b: case 0x061f: case 0x06d4:
    case 0x0964: case 0x0965:
    case 0x3001: case 0x3002:
    case 0xff01: case 0xff08: case 0xff09: case 0xff0c: case 0xff0e:
    case 0xff1a: case 0xff1b: case 0xff1f:
      return true;
    default:
      return (cp >= 0x2010 && cp <= 0x2027) || (cp >= 0x2030 && cp <= 0x205e) ||
             (cp >= 0x3008 && cp <= 0x3011);
  }
}

namespace {

char32_t fold_cp(char32_t cp) {
  if (cp >= 'A' && cp <= 'Z') return cp + 0x20;
  // Latin-1 supplement (multiplication sign excluded)
  if (cp >= 0xc0 && cp <= 0xde && cp != 0xd7) return cp + 0x20;
  // Latin Extended-A: alternating pairs, with the dotted/dotless I exception
  if (cp >= 0x100 && cp <= 0x177) {
    if (cp == 0x130) return 'i';
    if (cp == 0x131) return cp;
    if ((cp & 1) == 0 && (cp <= 0x137 || cp >= 0x14a)) return cp + 1;
    if ((cp & 1) == 1 && cp >= 0x139 && cp <= 0x148) return cp + 1;
    return cp;
  }
  if (cp == 0x178) return 0xff;
  if (cp >= 0x179 && cp <= 0x17d && (cp & 1) == 1) return cp + 1;
  // Greek
  if (cp == 0x386) return 0x3ac;
  if ((cp >= 0x391 && cp <= 0x3a1) || (cp >= 0x3a3 && cp <= 0x3ab)) return cp + 0x20;
  // Cyrillic
  if (cp >= 0x400 && cp <= 0x40f) return cp + 0x50;
  if (cp >= 0x410 && cp <= 0x42f) return cp + 0x20;
  return cp;
}

}  // namespace

std::string casefold(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  while (!s.empty()) {
    const Utf8Char c = utf8_first(s);
    const char32_t folded = fold_cp(c.cp);
    if (folded == c.cp) {
      out.append(s.substr(0, c.bytes));  // preserves invalid bytes verbatim
    } else {
      utf8_append(out, folded);
    }
    s.remove_prefix(c.bytes);
  }
  return out;
}

std::string trim(std::string_view s) {
  while (!s.empty()) {
    const Utf8Char c = utf8_first(s);
    if (!is_space_cp(c.cp)) break;
    s.remove_prefix(c.bytes);
  }
  // trailing scan via codepoint walk; strings are short
  std::size_t end = 0, pos = 0;
  std::string_view rest = s;
  while (!rest.empty()) {
    const Utf8Char c = utf8_first(rest);
    if (!is_space_cp(c.cp)) end = pos + c.bytes;
    pos += c.bytes;
    rest.remove_prefix(c.bytes);
  }
  return std::string(s.substr(0, end));
}

std::vector<std::string> split_ws(std::string_view s) {
  std::vector<std::string> out;
  std::string cur;
  while (!s.empty()) {
    const Utf8Char c = utf8_first(s);
    if (is_space_cp(c.cp)) {
      if (!cur.empty()) out.push_back(std::move(cur)), cur.clear();
    } else {
      cur.append(s.substr(0, c.bytes));
    }
    s.remove_prefix(c.bytes);
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

std::string strip_outer_punct(std::string_view s) {
  while (!s.empty()) {
    const Utf8Char c = utf8_first(s);
    if (!is_punct_cp(c.cp)) break;
    s.remove_prefix(c.bytes);
  }
  std::size_t end = 0, pos = 0;
  std::string_view rest = s;
  while (!rest.empty()) {
    const Utf8Char c = utf8_first(rest);
    if (!is_punct_cp(c.cp)) end = pos + c.bytes;
    pos += c.bytes;
    rest.remove_prefix(c.bytes);
  }
  return std::string(s.substr(0, end));
}

std::string normalize_token(std::string_view s) { return strip_outer_punct(casefold(s)); }

std::string format_double(double v, int precision) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", precision, v);
  return buf;
}

}  // namespace slowads
