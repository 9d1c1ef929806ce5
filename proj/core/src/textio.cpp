// SPDX-License-Identifier: Apache-2.0
//
// xprkit - multipath cross-polarization ratio modeling toolkit
// Copyright (C) 2025-2026 The xprkit authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "xpr/textio.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <sstream>

namespace xpr
{

parse_error::parse_error(const std::filesystem::path &file, std::size_t line,
                         const std::string &what_arg)
    : std::runtime_error(file.string() + ":" + std::to_string(line) + ": " + what_arg)
{
}

parse_error::parse_error(const std::filesystem::path &file, const std::string &what_arg)
    : std::runtime_error(file.string() + ": " + what_arg)
{
}

void KeyValueBlock::set(const std::string &key, const std::string &value)
{
    for (auto &e : entries_)
        if (e.first == key)
        {
            e.second = value;
            return;
        }
    entries_.emplace_back(key, value);
}

void KeyValueBlock::set_double(const std::string &key, double value)
{
    set(key, format_compact(value));
}

void KeyValueBlock::set_uint(const std::string &key, std::uint64_t value)
{
    set(key, std::to_string(value));
}

bool KeyValueBlock::contains(const std::string &key) const
{
    for (const auto &e : entries_)
        if (e.first == key)
            return true;
    return false;
}

const std::string &KeyValueBlock::get(const std::string &key) const
{
    for (const auto &e : entries_)
        if (e.first == key)
            return e.second;
    throw std::out_of_range("missing key '" + key + "'");
}

double KeyValueBlock::get_double(const std::string &key) const
{
    const std::string &v = get(key);
    char *end = nullptr;
    double x = std::strtod(v.c_str(), &end);
    if (end == v.c_str() || *end != '\0')
        throw std::out_of_range("key '" + key + "' is not a number: '" + v + "'");
    return x;
}

std::uint64_t KeyValueBlock::get_uint(const std::string &key) const
{
    const std::string &v = get(key);
    char *end = nullptr;
    unsigned long long x = std::strtoull(v.c_str(), &end, 10);
    if (end == v.c_str() || *end != '\0')
        throw std::out_of_range("key '" + key + "' is not an integer: '" + v + "'");
    return x;
}

std::string trim(const std::string &s)
{
    std::size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos)
        return {};
    std::size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

KeyValueBlock read_key_values(std::istream &in, const std::filesystem::path &file,
                              std::size_t &next_line)
{
    KeyValueBlock block;
    std::size_t line_no = 0;
    std::string line;
    while (true)
    {
        std::streampos pos = in.tellg();
        if (!std::getline(in, line))
        {
            next_line = line_no + 1;
            return block;
        }
        ++line_no;
        std::string t = trim(line);
        if (t.empty() || t[0] == '#')
            continue;
        std::size_t eq = t.find('=');
        if (eq == std::string::npos)
        {
            // first body line; rewind so the caller can consume it
            in.clear();
            in.seekg(pos);
            next_line = line_no;
            return block;
        }
        std::string key = trim(t.substr(0, eq));
        std::string value = trim(t.substr(eq + 1));
        if (key.empty())
            throw parse_error(file, line_no, "empty key in header line '" + t + "'");
        block.set(key, value);
    }
}

KeyValueBlock read_key_value_file(const std::filesystem::path &file)
{
    std::ifstream in(file);
    if (!in)
        throw parse_error(file, "cannot open file");
    std::size_t next_line = 0;
    KeyValueBlock block = read_key_values(in, file, next_line);
    std::string rest;
    if (std::getline(in, rest) && !trim(rest).empty())
        throw parse_error(file, next_line, "unexpected non-header content: '" + trim(rest) + "'");
    return block;
}

std::string format_db(double v)
{
    char buf[512];
    std::snprintf(buf, sizeof(buf), "%.17f", v);
    return buf;
}

std::string format_compact(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string format_report(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

double parse_double(const std::string &text, const std::filesystem::path &file, std::size_t line,
                    const std::string &field)
{
    char *end = nullptr;
    double x = std::strtod(text.c_str(), &end);
    if (end == text.c_str() || *end != '\0')
        throw parse_error(file, line, "field '" + field + "' is not a number: '" + text + "'");
    return x;
}

std::vector<std::string> split_ws(const std::string &line)
{
    std::vector<std::string> out;
    std::size_t i = 0;
    while (i < line.size())
    {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r'))
            ++i;
        std::size_t j = i;
        while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r')
            ++j;
        if (j > i)
            out.push_back(line.substr(i, j - i));
        i = j;
    }
    return out;
}

std::vector<std::string> split_csv(const std::string &line)
{
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true)
    {
        std::size_t comma = line.find(',', start);
        if (comma == std::string::npos)
        {
            out.push_back(trim(line.substr(start)));
            return out;
        }
        out.push_back(trim(line.substr(start, comma - start)));
        start = comma + 1;
    }
}

void atomic_write_file(const std::filesystem::path &path, const std::string &content)
{
    namespace fs = std::filesystem;
    if (path.has_parent_path())
        fs::create_directories(path.parent_path());
    fs::path tmp = path;
    tmp += ".tmp~";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            throw std::runtime_error("cannot open '" + tmp.string() + "' for writing");
        out.write(content.data(), std::streamsize(content.size()));
        if (!out)
        {
            out.close();
            fs::remove(tmp);
            throw std::runtime_error("short write to '" + tmp.string() + "'");
        }
    }
    fs::rename(tmp, path);
}

std::string read_whole_file(const std::filesystem::path &path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot open '" + path.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace xpr
