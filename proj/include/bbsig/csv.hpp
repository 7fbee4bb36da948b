#pragma once

#include <iosfwd>
#include <string>

#include "bbsig/dataset.hpp"

namespace bbsig {

struct CsvOptions {
    bool has_header = true;
    // Response column selector: a column name (header required) or a 0-based
    // column index written as digits. All remaining columns become features.
    std::string response;
    // When true the response is read as integer class labels and converted to
    // one-hot outcomes; otherwise it is a single real outcome column.
    bool classification = false;
};

// RFC-4180 style: comma separated, double quotes with "" escapes. Malformed
// numeric fields are hard errors (CsvError), never imputed.
Dataset parse_csv(std::istream& in, const CsvOptions& opt);
Dataset load_csv(const std::string& path, const CsvOptions& opt);

}  // namespace bbsig
