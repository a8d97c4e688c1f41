// Copyright 2026 the intentsearch authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "intentsearch/core/eth_price.hpp"

#include <cctype>
#include <cstdlib>
#include <string>

#include "intentsearch/core/error.hpp"

namespace isearch {

namespace {

constexpr int kMaxDigits = 38;

[[noreturn]] void
bad_price(std::string_view text, const char* why) {
    throw Error(ErrorCode::kInvalidArgument,
                "invalid price '" + std::string(text) + "': " + why);
}

EthPrice::Wei
pow10(int n) {
    EthPrice::Wei r = 1;
    for (int i = 0; i < n; ++i) {
        r *= 10;
    }
    return r;
}

}  // namespace

EthPrice
EthPrice::parse(std::string_view text) {
    std::size_t b = 0;
    std::size_t e = text.size();
    while (b < e && std::isspace(static_cast<unsigned char>(text[b]))) {
        ++b;
    }
    while (e > b && std::isspace(static_cast<unsigned char>(text[e - 1]))) {
        --e;
    }
    std::string_view s = text.substr(b, e - b);
    if (s.empty()) {
        bad_price(text, "empty");
    }
    if (s.front() == '-') {
        bad_price(text, "negative");
    }
    if (s.front() == '+') {
        s.remove_prefix(1);
    }

    std::string digits;
    int frac_len = 0;
    bool seen_point = false;
    std::size_t i = 0;
    for (; i < s.size(); ++i) {
        char c = s[i];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            digits.push_back(c);
            if (seen_point) {
                ++frac_len;
            }
        } else if (c == '.' && !seen_point) {
            seen_point = true;
        } else {
            break;
        }
    }
    if (digits.empty()) {
        bad_price(text, "no digits");
    }
    int exponent = 0;
    if (i < s.size()) {
        if (s[i] != 'e' && s[i] != 'E') {
            bad_price(text, "unexpected character");
        }
        ++i;
        std::string exp_text(s.substr(i));
        if (exp_text.empty()) {
            bad_price(text, "empty exponent");
        }
        char* end = nullptr;
        long v = std::strtol(exp_text.c_str(), &end, 10);
        if (end == exp_text.c_str() || *end != '\0' || v < -64 || v > 64) {
            bad_price(text, "bad exponent");
        }
        exponent = static_cast<int>(v);
    }

    std::size_t first_nonzero = digits.find_first_not_of('0');
    if (first_nonzero == std::string::npos) {
        return EthPrice{};
    }
    digits.erase(0, first_nonzero);

    int shift = exponent - frac_len + kFractionDigits;
    if (shift < 0) {
        auto drop = static_cast<std::size_t>(-shift);
        if (drop >= digits.size()) {
            bad_price(text, "finer than 1 wei");
        }
        for (std::size_t k = digits.size() - drop; k < digits.size(); ++k) {
            if (digits[k] != '0') {
                bad_price(text, "finer than 1 wei");
            }
        }
        digits.resize(digits.size() - drop);
        shift = 0;
    }
    if (static_cast<int>(digits.size()) + shift > kMaxDigits) {
        bad_price(text, "too large");
    }
    Wei wei = 0;
    for (char c : digits) {
        wei = wei * 10 + (c - '0');
    }
    return from_wei(wei * pow10(shift));
}

std::string
EthPrice::to_string() const {
    const Wei scale = pow10(kFractionDigits);
    Wei whole = wei_ / scale;
    Wei frac = wei_ % scale;

    std::string int_part;
    do {
        int_part.insert(int_part.begin(), static_cast<char>('0' + static_cast<int>(whole % 10)));
        whole /= 10;
    } while (whole > 0);

    if (frac == 0) {
        return int_part;
    }
    std::string frac_part(kFractionDigits, '0');
    for (int k = kFractionDigits - 1; k >= 0; --k) {
        frac_part[static_cast<std::size_t>(k)] = static_cast<char>('0' + static_cast<int>(frac % 10));
        frac /= 10;
    }
    frac_part.erase(frac_part.find_last_not_of('0') + 1);
    return int_part + "." + frac_part;
}

double
EthPrice::to_double() const {
    return std::strtod(to_string().c_str(), nullptr);
}

}  // namespace isearch
