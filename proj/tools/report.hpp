/*
 * Copyright 2026 The ethpipe Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace ethpipe::cli {

/// A flat record of typed fields, rendered either as a `key=value` line or
/// as a JSON object. Both renderings carry exactly the same keys.
class Record {
public:
    using Value = std::variant<std::string, std::int64_t, std::uint64_t, double, bool>;

    explicit Record(std::string type) : type_(std::move(type)) {}

    Record& set(std::string key, std::string v) { return put(std::move(key), std::move(v)); }
    Record& set(std::string key, const char* v) { return put(std::move(key), std::string(v)); }
    Record& set(std::string key, bool v) { return put(std::move(key), v); }
    Record& set(std::string key, double v) { return put(std::move(key), v); }
    Record& set(std::string key, int v) { return put(std::move(key), std::int64_t{v}); }
    Record& set(std::string key, long v) { return put(std::move(key), std::int64_t{v}); }
    Record& set(std::string key, long long v) { return put(std::move(key), std::int64_t{v}); }
    Record& set(std::string key, unsigned v) { return put(std::move(key), std::uint64_t{v}); }
    Record& set(std::string key, unsigned long v) { return put(std::move(key), std::uint64_t{v}); }
    Record& set(std::string key, unsigned long long v) { return put(std::move(key), std::uint64_t{v}); }

    const std::string& type() const { return type_; }
    const std::vector<std::pair<std::string, Value>>& fields() const { return fields_; }

private:
    Record& put(std::string key, Value v)
    {
        fields_.emplace_back(std::move(key), std::move(v));
        return *this;
    }

    std::string type_;
    std::vector<std::pair<std::string, Value>> fields_;
};

struct Style {
    bool color = false;
};

class Report {
public:
    Record& add(std::string type) { return records_.emplace_back(std::move(type)); }

    void render_kv(std::ostream& out, Style style = {}) const;
    void render_json(std::ostream& out) const;

    const std::vector<Record>& records() const { return records_; }

private:
    std::vector<Record> records_;
};

} // namespace ethpipe::cli
