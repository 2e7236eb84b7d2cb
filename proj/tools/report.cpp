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

#include "report.hpp"

#include <json.hpp>

#include <cstdio>

namespace ethpipe::cli {

namespace {

std::string plain(const Record::Value& v)
{
    struct {
        std::string operator()(const std::string& s) const { return s; }
        std::string operator()(std::int64_t i) const { return std::to_string(i); }
        std::string operator()(std::uint64_t u) const { return std::to_string(u); }
        std::string operator()(double d) const
        {
            char buf[32];
            std::snprintf(buf, sizeof buf, "%.6g", d);
            return buf;
        }
        std::string operator()(bool b) const { return b ? "true" : "false"; }
    } visit;
    return std::visit(visit, v);
}

const char* color_for(const std::string& key, const std::string& value)
{
    if (key != "fcs" && key != "result" && key != "action") return nullptr;
    if (value == "ok" || value == "forward" || value == "unicast") return "\x1b[32m";
    if (value == "bad" || value == "drop" || value == "discard") return "\x1b[31m";
    return nullptr;
}

} // namespace

void Report::render_kv(std::ostream& out, Style style) const
{
    for (const auto& r : records_) {
        out << r.type();
        for (const auto& [key, value] : r.fields()) {
            const std::string text = plain(value);
            const char* c = style.color ? color_for(key, text) : nullptr;
            out << ' ' << key << '=';
            if (c)
                out << c << text << "\x1b[0m";
            else
                out << text;
        }
        out << '\n';
    }
}

void Report::render_json(std::ostream& out) const
{
    nlohmann::ordered_json doc;
    doc["records"] = nlohmann::ordered_json::array();
    for (const auto& r : records_) {
        nlohmann::ordered_json obj;
        obj["record"] = r.type();
        for (const auto& [key, value] : r.fields())
            std::visit([&](const auto& v) { obj[key] = v; }, value);
        doc["records"].push_back(std::move(obj));
    }
    out << doc.dump(2) << '\n';
}

} // namespace ethpipe::cli
