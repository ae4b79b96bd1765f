#include "travesty/traffic_ingest.hpp"

#include <fstream>
#include <istream>
#include <sstream>
#include <vector>

#include <zlib.h>

namespace travesty {

namespace {

enum class RowOutcome { Attack, Normal, Skip };

// Splits just far enough to reach the label and login columns.
RowOutcome classify_row(const std::string& line, const RecordSchema& schema, bool& login_success, long line_no) {
    const int needed = std::max(schema.label_column, schema.login_column);
    std::vector<std::string> fields;
    fields.reserve(static_cast<std::size_t>(needed) + 1);
    std::size_t start = 0;
    while (static_cast<int>(fields.size()) <= needed) {
        const std::size_t pos = line.find(schema.delimiter, start);
        if (pos == std::string::npos) {
            fields.push_back(line.substr(start));
            break;
        }
        fields.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
    if (static_cast<int>(fields.size()) <= needed) {
        if (schema.strict) throw ParseError("row has too few fields", line_no);
        return RowOutcome::Skip;
    }

    const std::string& login = fields[static_cast<std::size_t>(schema.login_column)];
    if (login == "1")
        login_success = true;
    else if (login == "0")
        login_success = false;
    else {
        if (schema.strict) throw ParseError("login field must be 0 or 1, got '" + login + "'", line_no);
        return RowOutcome::Skip;
    }

    const std::string& label = fields[static_cast<std::size_t>(schema.label_column)];
    if (schema.normal_labels.count(label)) return RowOutcome::Normal;
    if (schema.attack_labels.empty() || schema.attack_labels.count(label)) return RowOutcome::Attack;
    if (schema.strict) throw ParseError("label '" + label + "' is outside the configured classes", line_no);
    return RowOutcome::Skip;
}

}  // namespace

TrafficSummary merge(const TrafficSummary& left, const TrafficSummary& right) {
    TrafficSummary out;
    out.total_records = left.total_records + right.total_records;
    out.attack_records = left.attack_records + right.attack_records;
    out.normal_records = left.normal_records + right.normal_records;
    out.attack_login_success = left.attack_login_success + right.attack_login_success;
    out.normal_login_success = left.normal_login_success + right.normal_login_success;
    out.skipped_rows = left.skipped_rows + right.skipped_rows;
    return out;
}

TrafficSummary parse_records(std::istream& in, const RecordSchema& schema) {
    if (schema.label_column < 0 || schema.login_column < 0) throw ArgumentError("column indices must be nonnegative");

    TrafficSummary summary;
    std::string line;
    long line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        bool login_success = false;
        switch (classify_row(line, schema, login_success, line_no)) {
            case RowOutcome::Attack:
                ++summary.total_records;
                ++summary.attack_records;
                if (login_success) ++summary.attack_login_success;
                break;
            case RowOutcome::Normal:
                ++summary.total_records;
                ++summary.normal_records;
                if (login_success) ++summary.normal_login_success;
                break;
            case RowOutcome::Skip:
                ++summary.skipped_rows;
                break;
        }
    }
    if (summary.total_records == 0 && summary.skipped_rows == 0) throw ParseError("input contains no records");
    return summary;
}

std::pair<Belief, SignalModel> estimate_model(const TrafficSummary& summary) {
    if (summary.attack_records == 0 || summary.normal_records == 0)
        throw ValidationError("model estimation needs records in both classes");

    Belief belief;
    belief.pH1 = static_cast<double>(summary.attack_records) / static_cast<double>(summary.total_records);
    belief.pH0 = static_cast<double>(summary.normal_records) / static_cast<double>(summary.total_records);

    const double attack_success = attack_success_rate(summary);
    const double normal_success = normal_success_rate(summary);
    SignalModel model;
    model.signals = {"0", "1"};
    model.f1 = Eigen::Vector2d(attack_success, 1.0 - attack_success);
    model.f0 = Eigen::Vector2d(normal_success, 1.0 - normal_success);
    validate(model);
    return {belief, model};
}

double attack_success_rate(const TrafficSummary& summary) {
    if (summary.attack_records == 0) throw ValidationError("no attack records to rate");
    return static_cast<double>(summary.attack_login_success) / static_cast<double>(summary.attack_records);
}

double normal_success_rate(const TrafficSummary& summary) {
    if (summary.normal_records == 0) throw ValidationError("no normal records to rate");
    return static_cast<double>(summary.normal_login_success) / static_cast<double>(summary.normal_records);
}

SignalModel quoted_case_model() { return bernoulli_model(kQuotedTheta1, kQuotedTheta0); }

Belief quoted_case_belief() { return Belief{kQuotedPriorH1, 1.0 - kQuotedPriorH1}; }

std::string load_text_auto(const std::string& path) {
    std::ifstream file(path, std::ios::binary);
    if (!file) throw Error("cannot open '" + path + "'");
    std::ostringstream raw;
    raw << file.rdbuf();
    std::string content = raw.str();

    const bool gzipped = content.size() >= 2 && static_cast<unsigned char>(content[0]) == 0x1f &&
                         static_cast<unsigned char>(content[1]) == 0x8b;
    if (!gzipped) return content;

    z_stream stream{};
    if (inflateInit2(&stream, 16 + MAX_WBITS) != Z_OK) throw Error("zlib initialization failed");
    std::string inflated;
    std::vector<char> buffer(1 << 16);
    stream.next_in = reinterpret_cast<Bytef*>(content.data());
    stream.avail_in = static_cast<uInt>(content.size());
    while (true) {
        stream.next_out = reinterpret_cast<Bytef*>(buffer.data());
        stream.avail_out = static_cast<uInt>(buffer.size());
        const int status = inflate(&stream, Z_NO_FLUSH);
        if (status != Z_OK && status != Z_STREAM_END) {
            inflateEnd(&stream);
            throw Error("gzip decompression of '" + path + "' failed (zlib status " + std::to_string(status) + ")");
        }
        inflated.append(buffer.data(), buffer.size() - stream.avail_out);
        if (status == Z_STREAM_END) {
            if (stream.avail_in == 0) break;
            inflateReset2(&stream, 16 + MAX_WBITS);  // concatenated gzip members
        }
    }
    inflateEnd(&stream);
    return inflated;
}

}  // namespace travesty
