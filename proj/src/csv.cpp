#include "bbsig/csv.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <istream>
#include <sstream>
#include <vector>

namespace bbsig {

namespace {

// One RFC-4180 record; handles quoted fields with "" escapes. Returns false
// at end of input.
bool read_record(std::istream& in, std::vector<std::string>& fields) {
    fields.clear();
    std::string field;
    bool in_quotes = false;
    bool saw_any = false;
    int c;
    while ((c = in.get()) != EOF) {
        saw_any = true;
        char ch = static_cast<char>(c);
        if (in_quotes) {
            if (ch == '"') {
                if (in.peek() == '"') {
                    field += '"';
                    in.get();
                } else {
                    in_quotes = false;
                }
            } else {
                field += ch;
            }
        } else if (ch == '"') {
            in_quotes = true;
        } else if (ch == ',') {
            fields.push_back(field);
            field.clear();
        } else if (ch == '\n') {
            break;
        } else if (ch == '\r') {
            if (in.peek() == '\n') in.get();
            break;
        } else {
            field += ch;
        }
    }
    if (!saw_any) return false;
    fields.push_back(field);
    return true;
}

double parse_number(const std::string& raw, Index row, const std::string& col) {
    const char* begin = raw.c_str();
    char* end = nullptr;
    double v = std::strtod(begin, &end);
    // Trailing spaces are tolerated; anything else is a hard error.
    while (end && *end != '\0' && std::isspace(static_cast<unsigned char>(*end))) ++end;
    if (end == begin || *end != '\0')
        throw CsvError("malformed numeric '" + raw + "' at row " + std::to_string(row) +
                       ", column " + col);
    if (!std::isfinite(v))
        throw CsvError("non-finite value at row " + std::to_string(row) + ", column " + col);
    return v;
}

}  // namespace

Dataset parse_csv(std::istream& in, const CsvOptions& opt) {
    std::vector<std::string> fields;
    std::vector<std::string> header;

    if (opt.has_header) {
        if (!read_record(in, header)) throw CsvError("empty CSV input");
    }

    std::vector<std::vector<double>> rows;
    Index line = opt.has_header ? 2 : 1;
    std::size_t width = header.size();
    while (read_record(in, fields)) {
        if (fields.size() == 1 && fields[0].empty()) {
            ++line;
            continue;  // blank line
        }
        if (width == 0) width = fields.size();
        if (fields.size() != width)
            throw CsvError("row " + std::to_string(line) + " has " +
                           std::to_string(fields.size()) + " fields, expected " +
                           std::to_string(width));
        std::vector<double> row(fields.size());
        for (std::size_t j = 0; j < fields.size(); ++j) {
            std::string col = opt.has_header ? header[j] : std::to_string(j);
            row[j] = parse_number(fields[j], line, col);
        }
        rows.push_back(std::move(row));
        ++line;
    }

    if (rows.empty()) throw CsvError("CSV has no data rows");
    const Index n = static_cast<Index>(rows.size());
    const Index total = static_cast<Index>(width);
    if (total < 2) throw CsvError("CSV needs a response column and at least one feature");

    // Resolve the response column: name first (when there is a header), then
    // a 0-based index.
    Index response = -1;
    if (!opt.response.empty()) {
        if (opt.has_header) {
            auto it = std::find(header.begin(), header.end(), opt.response);
            if (it != header.end()) response = static_cast<Index>(it - header.begin());
        }
        if (response < 0) {
            bool digits = std::all_of(opt.response.begin(), opt.response.end(), [](unsigned char c) {
                return std::isdigit(c);
            });
            if (!digits)
                throw CsvError("response column '" + opt.response + "' not found");
            response = std::stol(opt.response);
        }
    } else {
        response = total - 1;  // default: last column
    }
    if (response < 0 || response >= total)
        throw CsvError("response column index " + std::to_string(response) + " out of range");

    Dataset data;
    data.features.resize(n, total - 1);
    std::vector<double> raw_response(static_cast<std::size_t>(n));
    data.column_names.clear();
    for (Index j = 0, out = 0; j < total; ++j) {
        if (j == response) continue;
        if (opt.has_header) data.column_names.push_back(header[static_cast<std::size_t>(j)]);
        for (Index i = 0; i < n; ++i)
            data.features(i, out) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
        ++out;
    }
    for (Index i = 0; i < n; ++i)
        raw_response[static_cast<std::size_t>(i)] =
            rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(response)];

    if (opt.classification) {
        long max_label = -1;
        std::vector<long> labels(static_cast<std::size_t>(n));
        for (Index i = 0; i < n; ++i) {
            double v = raw_response[static_cast<std::size_t>(i)];
            long lab = std::lround(v);
            if (std::fabs(v - static_cast<double>(lab)) > 1e-9 || lab < 0)
                throw CsvError("class label at row " + std::to_string(i + 1) +
                               " is not a non-negative integer");
            labels[static_cast<std::size_t>(i)] = lab;
            max_label = std::max(max_label, lab);
        }
        if (max_label < 1) throw CsvError("classification needs at least two classes");
        data.outcomes = Matrix::Zero(n, max_label + 1);
        for (Index i = 0; i < n; ++i)
            data.outcomes(i, labels[static_cast<std::size_t>(i)]) = 1.0;
    } else {
        data.outcomes.resize(n, 1);
        for (Index i = 0; i < n; ++i)
            data.outcomes(i, 0) = raw_response[static_cast<std::size_t>(i)];
    }

    validate(data);
    return data;
}

Dataset load_csv(const std::string& path, const CsvOptions& opt) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw CsvError("cannot open '" + path + "'");
    return parse_csv(in, opt);
}

}  // namespace bbsig
