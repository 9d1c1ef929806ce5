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

#ifndef xprkit_textio_H
#define xprkit_textio_H

#include <filesystem>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace xpr
{

// Error raised by any of the text-format readers; the message always names
// the file and, where meaningful, the line or field that failed.
class parse_error : public std::runtime_error
{
  public:
    parse_error(const std::filesystem::path &file, std::size_t line, const std::string &what_arg);
    parse_error(const std::filesystem::path &file, const std::string &what_arg);
};

// Key/value header block as used by the PADP, model and config file formats.
// Keys keep first-seen order for byte-stable writing.
class KeyValueBlock
{
  public:
    void set(const std::string &key, const std::string &value);
    void set_double(const std::string &key, double value);
    void set_uint(const std::string &key, std::uint64_t value);

    bool contains(const std::string &key) const;
    const std::string &get(const std::string &key) const; // throws std::out_of_range
    double get_double(const std::string &key) const;
    std::uint64_t get_uint(const std::string &key) const;

    const std::vector<std::pair<std::string, std::string>> &entries() const { return entries_; }

  private:
    std::vector<std::pair<std::string, std::string>> entries_;
};

// Parses `key = value` lines until the first line that is not one (that line
// is not consumed; `next_line` reports the 1-based number of the first body
// line). `#` comments and blank lines are skipped.
KeyValueBlock read_key_values(std::istream &in, const std::filesystem::path &file,
                              std::size_t &next_line);

// Whole-file convenience wrapper; complains about trailing non-header content.
KeyValueBlock read_key_value_file(const std::filesystem::path &file);

// Locale-independent numeric formatting.
// format_db: fixed, 17 decimals -- round-trips any double of dB magnitude and
// satisfies the >= 4 decimal digits required by the file formats.
std::string format_db(double v);
// format_compact: shortest %.17g form, exact round trip for any double.
std::string format_compact(double v);
// format_report: %.10g, for human-facing report tables.
std::string format_report(double v);

double parse_double(const std::string &text, const std::filesystem::path &file, std::size_t line,
                    const std::string &field);

// Splits on any run of spaces/tabs; never returns empty tokens.
std::vector<std::string> split_ws(const std::string &line);
std::vector<std::string> split_csv(const std::string &line);
std::string trim(const std::string &s);

// Writes content to `path + ".tmp~"` and renames into place, so readers never
// observe a partially written file.
void atomic_write_file(const std::filesystem::path &path, const std::string &content);

std::string read_whole_file(const std::filesystem::path &path);

} // namespace xpr

#endif
