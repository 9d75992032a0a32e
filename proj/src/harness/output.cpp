// Copyright 2026 The qdl Authors
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

#include "qdl/harness/output.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <json.hpp>

#include "qdl/errors.hpp"

namespace qdl::harness {

using nlohmann::json;

namespace {

std::string cell(const Value &v) {
    struct Visitor {
        std::string operator()(std::monostate) const { return {}; }
        std::string operator()(std::int64_t x) const { return std::to_string(x); }
        std::string operator()(std::uint64_t x) const { return std::to_string(x); }
        std::string operator()(double x) const { return format_real(x); }
        std::string operator()(bool x) const { return x ? "true" : "false"; }
        std::string operator()(const std::string &x) const { return x; }
    };
    return std::visit(Visitor{}, v);
}

json to_json(const Value &v) {
    struct Visitor {
        json operator()(std::monostate) const { return nullptr; }
        json operator()(std::int64_t x) const { return x; }
        json operator()(std::uint64_t x) const { return x; }
        json operator()(double x) const { return std::isfinite(x) ? json(x) : json(nullptr); }
        json operator()(bool x) const { return x; }
        json operator()(const std::string &x) const { return x; }
    };
    return std::visit(Visitor{}, v);
}

json summary_json(const RunRecord &r) {
    json s = json::object();
    for (const auto &[k, v] : r.summary) s[k] = to_json(v);
    return s;
}

}  // namespace

const Value *RunRecord::summary_value(std::string_view key) const {
    for (const auto &[k, v] : summary)
        if (k == key) return &v;
    return nullptr;
}

std::string format_real(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    std::string s(buf);
    // guard against a comma decimal separator from a foreign global locale
    for (char &c : s)
        if (c == ',') c = '.';
    return s;
}

std::string render_csv(const RunRecord &r) {
    std::string out;
    for (std::size_t i = 0; i < r.columns.size(); ++i) out += (i ? "," : "") + r.columns[i];
    out += '\n';
    for (const auto &row : r.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += ',';
            out += cell(row[i]);
        }
        out += '\n';
    }
    return out;
}

std::string render_json(const RunRecord &r) {
    json j;
    j["experiment"] = r.experiment;
    j["seed"] = r.seed;
    j["config"] = json::parse(r.config);
    j["columns"] = r.columns;
    json rows = json::array();
    for (const auto &row : r.rows) {
        json o = json::object();
        for (std::size_t i = 0; i < row.size() && i < r.columns.size(); ++i) o[r.columns[i]] = to_json(row[i]);
        rows.push_back(std::move(o));
    }
    j["rows"] = std::move(rows);
    j["summary"] = summary_json(r);
    return j.dump(1) + "\n";
}

std::string render(const RunRecord &r, Format f) { return f == Format::Csv ? render_csv(r) : render_json(r); }

void write_atomic(const std::string &path, const std::string &content) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) fail(ErrorKind::Usage, "cannot write output file '" + tmp.string() + "'");
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        out.flush();
        if (!out) fail(ErrorKind::Usage, "write failed for '" + tmp.string() + "'");
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) {
        fs::remove(tmp, ec);
        fail(ErrorKind::Usage, "cannot move output into place at '" + path + "'");
    }
}

void emit(const RunRecord &r, const std::string &path, Format f) {
    const std::string data = render(r, f);
    if (path.empty() || path == "-") {
        std::cout << data;
        std::cout.flush();
        return;
    }
    write_atomic(path, data);
    json meta;
    meta["experiment"] = r.experiment;
    meta["version"] = kVersion;
    meta["seed"] = r.seed;
    meta["wall_seconds"] = r.wall_seconds;
    meta["rows"] = r.rows.size();
    meta["format"] = to_string(f);
    meta["summary"] = summary_json(r);
    meta["config"] = json::parse(r.config);
    write_atomic(path + ".meta.json", meta.dump(1) + "\n");
}

}  // namespace qdl::harness
