// Copyright 2026 The exfree Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "args.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace exfree::cli {

namespace {

std::string trim(const std::string &s) {
    size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) {
        return "";
    }
    size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

int parse_positive(const std::string &text) {
    std::string t = trim(text);
    size_t used = 0;
    long v = 0;
    try {
        v = std::stol(t, &used);
    } catch (const std::exception &) {
        throw std::invalid_argument("not an integer: '" + text + "'");
    }
    if (used != t.size()) {
        throw std::invalid_argument("not an integer: '" + text + "'");
    }
    if (v < 1 || v > 100000000) {
        throw std::invalid_argument("cycle counts must be positive: '" + text + "'");
    }
    return static_cast<int>(v);
}

double parse_real(const std::string &text) {
    std::string t = trim(text);
    char *end = nullptr;
    double v = std::strtod(t.c_str(), &end);
    if (t.empty() || end != t.c_str() + t.size() || !std::isfinite(v)) {
        throw std::invalid_argument("not a finite number: '" + text + "'");
    }
    return v;
}

}  // namespace

std::vector<int> parse_range(const std::string &text) {
    std::vector<int> out;
    if (text.find(':') != std::string::npos) {
        std::vector<std::string> parts;
        std::stringstream ss(text);
        for (std::string p; std::getline(ss, p, ':');) {
            parts.push_back(p);
        }
        if (parts.size() != 3) {
            throw std::invalid_argument("range must be start:stop:step, got '" + text + "'");
        }
        int start = parse_positive(parts[0]);
        int stop = parse_positive(parts[1]);
        int step = parse_positive(parts[2]);
        if (stop < start) {
            throw std::invalid_argument("range stop is below start in '" + text + "'");
        }
        for (int v = start; v <= stop; v += step) {
            out.push_back(v);
        }
        return out;
    }
    std::stringstream ss(text);
    for (std::string p; std::getline(ss, p, ',');) {
        out.push_back(parse_positive(p));
    }
    if (out.empty()) {
        throw std::invalid_argument("empty value list");
    }
    return out;
}

double parse_angle(const std::string &text) {
    std::string t = trim(text);
    size_t at = t.find("pi");
    size_t width = 2;
    if (at == std::string::npos) {
        at = t.find("\xCF\x80");  // UTF-8 pi
    }
    if (at == std::string::npos) {
        return parse_real(t);
    }
    std::string coeff = trim(t.substr(0, at));
    std::string rest = trim(t.substr(at + width));
    if (!coeff.empty() && coeff.back() == '*') {
        coeff = trim(coeff.substr(0, coeff.size() - 1));
    }
    double c = 1;
    if (coeff == "-") {
        c = -1;
    } else if (coeff == "+" || coeff.empty()) {
        c = 1;
    } else {
        c = parse_real(coeff);
    }
    double d = 1;
    if (!rest.empty()) {
        if (rest[0] != '/') {
            throw std::invalid_argument("cannot read angle '" + text + "'");
        }
        d = parse_real(rest.substr(1));
        if (d == 0) {
            throw std::invalid_argument("zero denominator in angle '" + text + "'");
        }
    }
    return c * std::numbers::pi / d;
}

std::vector<double> parse_reals(const std::string &text) {
    std::vector<double> out;
    std::stringstream ss(text);
    for (std::string p; std::getline(ss, p, ',');) {
        out.push_back(parse_real(p));
    }
    return out;
}

std::vector<std::pair<std::string, std::string>> read_config(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw std::invalid_argument("cannot open config file '" + path + "'");
    }
    std::vector<std::pair<std::string, std::string>> out;
    int line_no = 0;
    for (std::string line; std::getline(in, line);) {
        line_no++;
        size_t hash = line.find('#');
        if (hash != std::string::npos) {
            line = line.substr(0, hash);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        size_t eq = line.find('=');
        if (eq == std::string::npos || trim(line.substr(0, eq)).empty()) {
            throw std::invalid_argument(path + ":" + std::to_string(line_no) + ": expected key=value");
        }
        out.emplace_back(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    return out;
}

int threads_from_env() {
    const char *v = std::getenv("EXFREE_THREADS");
    if (v == nullptr) {
        return 0;
    }
    char *end = nullptr;
    long n = std::strtol(v, &end, 10);
    if (end == v || *end != '\0' || n < 1 || n > 1024) {
        return 0;
    }
    return static_cast<int>(n);
}

}  // namespace exfree::cli
