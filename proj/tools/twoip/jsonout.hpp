#pragma once

// Minimal deterministic JSON writer for machine-readable reports: fixed key
// order (insertion order), two-space indentation, numbers rendered with 17
// significant digits so identical runs produce byte-identical documents.
// Non-finite values are emitted as null.

#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <string>
#include <string_view>
#include <vector>

namespace twoip_cli {

inline std::string format_double(double v) {
    if (!std::isfinite(v)) return "null";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v,
                                   std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

class JsonWriter {
public:
    void begin_object() { open('{', '}'); }
    void end_object() { close('}'); }
    void begin_array() { open('[', ']'); }
    void end_array() { close(']'); }

    void key(std::string_view name) {
        prefix();
        append_string(name);
        out_ += ": ";
        pending_value_ = true;
    }

    void value(double v) { raw(format_double(v)); }
    void value(bool v) { raw(v ? "true" : "false"); }
    void value(std::uint64_t v) { raw(std::to_string(v)); }
    void value(int v) { raw(std::to_string(v)); }
    void value(std::string_view v) {
        prefix();
        append_string(v);
        mark_written();
    }
    void null_value() { raw("null"); }

    std::string take() {
        out_ += '\n';
        return std::move(out_);
    }

private:
    void open(char opener, char) {
        prefix();
        out_ += opener;
        depth_.push_back(false);
        mark_pending_cleared();
    }

    void close(char closer) {
        const bool had_items = depth_.back();
        depth_.pop_back();
        if (had_items) {
            out_ += '\n';
            indent();
        }
        out_ += closer;
        mark_written();
    }

    void raw(std::string_view text) {
        prefix();
        out_ += text;
        mark_written();
    }

    // Emits separators/indentation before a key or value.
    void prefix() {
        if (pending_value_) return;  // value directly after its key
        if (depth_.empty()) return;
        if (depth_.back()) out_ += ',';
        out_ += '\n';
        indent();
    }

    void indent() {
        for (std::size_t i = 0; i < depth_.size(); ++i) out_ += "  ";
    }

    void mark_written() {
        pending_value_ = false;
        if (!depth_.empty()) depth_.back() = true;
    }

    void mark_pending_cleared() {
        pending_value_ = false;
        if (depth_.size() > 1) depth_[depth_.size() - 2] = true;
    }

    void append_string(std::string_view s) {
        out_ += '"';
        for (char c : s) {
            switch (c) {
                case '"': out_ += "\\\""; break;
                case '\\': out_ += "\\\\"; break;
                case '\n': out_ += "\\n"; break;
                case '\r': out_ += "\\r"; break;
                case '\t': out_ += "\\t"; break;
                default:
                    if (static_cast<unsigned char>(c) < 0x20) {
                        char buf[8];
                        std::snprintf(buf, sizeof buf, "\\u%04x",
                                      static_cast<unsigned>(static_cast<unsigned char>(c)));
                        out_ += buf;
                    } else {
                        out_ += c;
                    }
            }
        }
        out_ += '"';
    }

    std::string out_;
    std::vector<bool> depth_;  // per level: has at least one emitted item
    bool pending_value_ = false;
};

}  // namespace twoip_cli
