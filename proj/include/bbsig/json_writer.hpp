#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace bbsig {

// Formats a double with 17 significant digits (round-trip exact).
std::string json_double(double v);

std::string json_escape(const std::string& s);

// Minimal ordered JSON emitter. Output is byte-stable for identical inputs,
// which the CLI's determinism contract relies on; floats always carry 17
// significant digits.
class JsonWriter {
public:
    JsonWriter& begin_object();
    JsonWriter& end_object();
    JsonWriter& begin_array();
    JsonWriter& end_array();
    JsonWriter& key(const std::string& name);
    JsonWriter& value(double v);
    JsonWriter& value(const std::string& v);
    JsonWriter& value(const char* v);
    JsonWriter& value(std::int64_t v);
    JsonWriter& value(int v);
    JsonWriter& value(std::uint64_t v);
    JsonWriter& value(bool v);
    const std::string& str() const { return out_; }

private:
    void before_value();
    std::string out_;
    std::vector<bool> need_comma_;
    bool after_key_ = false;
};

}  // namespace bbsig
