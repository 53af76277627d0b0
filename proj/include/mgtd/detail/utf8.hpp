#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace mgtd::detail {

// Minimal UTF-8 walker. Invalid bytes are passed through as single
// code points in the 0xDC80..0xDCFF range so that cleaning never loses
// or reorders bytes it does not understand.
struct Utf8Decoder {
    std::string_view text;
    std::size_t pos = 0;

    bool done() const { return pos >= text.size(); }

    // Decodes the next code point; advances pos past it. On malformed input
    // consumes exactly one byte.
    char32_t next() {
        const unsigned char b0 = static_cast<unsigned char>(text[pos]);
        if (b0 < 0x80) {
            ++pos;
            return b0;
        }
        int len = 0;
        char32_t cp = 0;
        if ((b0 & 0xE0) == 0xC0) { len = 2; cp = b0 & 0x1F; }
        else if ((b0 & 0xF0) == 0xE0) { len = 3; cp = b0 & 0x0F; }
        else if ((b0 & 0xF8) == 0xF0) { len = 4; cp = b0 & 0x07; }
        else { ++pos; return 0xDC00 + b0; }
        if (pos + len > text.size()) { ++pos; return 0xDC00 + b0; }
        for (int i = 1; i < len; ++i) {
            const unsigned char bi = static_cast<unsigned char>(text[pos + i]);
            if ((bi & 0xC0) != 0x80) { ++pos; return 0xDC00 + b0; }
            cp = (cp << 6) | (bi & 0x3F);
        }
        pos += static_cast<std::size_t>(len);
        return cp;
    }
};

inline void append_utf8(std::string& out, char32_t cp) {
    if (cp >= 0xDC80 && cp <= 0xDCFF) {  // raw byte passthrough
        out.push_back(static_cast<char>(cp - 0xDC00));
    } else if (cp < 0x80) {
        out.push_back(static_cast<char>(cp));
    } else if (cp < 0x800) {
        out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else if (cp < 0x10000) {
        out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else {
        out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    }
}

inline bool is_c0_or_c1_control(char32_t cp) {
    return (cp < 0x20 && cp != U'\n' && cp != U'\t' && cp != U'\r') ||
           cp == 0x7F || (cp >= 0x80 && cp <= 0x9F);
}

// Counts code points above U+007F (the "non-ASCII letters" the multilingual
// cleaning mode must preserve).
inline std::size_t count_non_ascii(std::string_view text) {
    Utf8Decoder dec{text};
    std::size_t n = 0;
    while (!dec.done()) {
        if (dec.next() > 0x7F) ++n;
    }
    return n;
}

}  // namespace mgtd::detail
