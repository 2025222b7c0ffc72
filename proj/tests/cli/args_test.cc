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
#include <stdexcept>

#include "gtest/gtest.h"

using namespace exfree::cli;

TEST(parse_range, inclusive_when_aligned) {
    ASSERT_EQ(parse_range("2:10:2"), (std::vector<int>{2, 4, 6, 8, 10}));
    ASSERT_EQ(parse_range("10:100:10").size(), 10u);
    ASSERT_EQ(parse_range("1:10:4"), (std::vector<int>{1, 5, 9}));
    ASSERT_EQ(parse_range("7:7:3"), (std::vector<int>{7}));
}

TEST(parse_range, lists_and_single_values) {
    ASSERT_EQ(parse_range("5"), (std::vector<int>{5}));
    ASSERT_EQ(parse_range("10, 20,40"), (std::vector<int>{10, 20, 40}));
}

TEST(parse_range, rejects_bad_input) {
    for (const char *bad : {"", "0", "-3", "2:1:1", "1:5:0", "1:5", "a:b:c", "1.5", "3,,4", "1:2:3:4"}) {
        ASSERT_THROW(parse_range(bad), std::invalid_argument) << bad;
    }
}

TEST(parse_angle, numbers_and_pi_forms) {
    const double pi = std::numbers::pi;
    ASSERT_DOUBLE_EQ(parse_angle("3.141592653589793"), pi);
    ASSERT_DOUBLE_EQ(parse_angle("pi"), pi);
    ASSERT_DOUBLE_EQ(parse_angle("\xCF\x80"), pi);
    ASSERT_DOUBLE_EQ(parse_angle("-pi/4"), -pi / 4);
    ASSERT_DOUBLE_EQ(parse_angle("2pi"), 2 * pi);
    ASSERT_DOUBLE_EQ(parse_angle("3*pi/2"), 1.5 * pi);
    ASSERT_DOUBLE_EQ(parse_angle(" 0.25 "), 0.25);
}

TEST(parse_angle, rejects_garbage) {
    for (const char *bad : {"", "deg", "pi/0", "pi*2", "1e999", "nan", "90deg"}) {
        ASSERT_THROW(parse_angle(bad), std::invalid_argument) << bad;
    }
}

TEST(parse_reals, splits_on_commas) {
    ASSERT_EQ(parse_reals("0.6,0,-0.8"), (std::vector<double>{0.6, 0, -0.8}));
    ASSERT_THROW(parse_reals("0.6,x"), std::invalid_argument);
}

TEST(read_config, key_value_with_comments) {
    std::string path = ::testing::TempDir() + "/exfree_args_test.conf";
    {
        std::ofstream f(path);
        f << "# comment\n\nm = 4\n  n=40   # trailing\ntheta=pi/2\n";
    }
    auto kv = read_config(path);
    ASSERT_EQ(kv.size(), 3u);
    ASSERT_EQ(kv[0], (std::pair<std::string, std::string>{"m", "4"}));
    ASSERT_EQ(kv[1], (std::pair<std::string, std::string>{"n", "40"}));
    ASSERT_EQ(kv[2], (std::pair<std::string, std::string>{"theta", "pi/2"}));
}

TEST(read_config, malformed_line_names_its_location) {
    std::string path = ::testing::TempDir() + "/exfree_args_bad.conf";
    {
        std::ofstream f(path);
        f << "m = 4\njust words\n";
    }
    try {
        read_config(path);
        FAIL() << "expected throw";
    } catch (const std::invalid_argument &e) {
        ASSERT_NE(std::string(e.what()).find(":2:"), std::string::npos) << e.what();
    }
    ASSERT_THROW(read_config(path + ".missing"), std::invalid_argument);
}

TEST(threads_from_env, falls_back_to_zero) {
    ::setenv("EXFREE_THREADS", "3", 1);
    ASSERT_EQ(threads_from_env(), 3);
    ::setenv("EXFREE_THREADS", "lots", 1);
    ASSERT_EQ(threads_from_env(), 0);
    ::unsetenv("EXFREE_THREADS");
    ASSERT_EQ(threads_from_env(), 0);
}
