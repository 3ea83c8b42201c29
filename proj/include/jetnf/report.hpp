#ifndef JETNF_REPORT_HPP
#define JETNF_REPORT_HPP

#include <sstream>
#include <string>

namespace jetnf {

// Deterministic key/value report document. Keys appear in insertion order;
// no timestamps or environment data ever enter, so identical inputs give
// byte-identical output.
class Report {
public:
    explicit Report(const std::string& command) {
        os_ << "jetnf-report {\n";
        kv("command", command);
    }

    void kv(const std::string& key, const std::string& value) {
        os_ << key << ": " << value << "\n";
    }
    void kv(const std::string& key, long long value) { kv(key, std::to_string(value)); }
    void kv(const std::string& key, int value) { kv(key, std::to_string(value)); }
    void kv(const std::string& key, bool value) { kv(key, std::string(value ? "yes" : "no")); }

    // Embedded block (a series document or a multi-line table).
    void block(const std::string& text) {
        os_ << text;
        if (text.empty() || text.back() != '\n') os_ << "\n";
    }

    std::string str() const { return os_.str() + "}\n"; }

private:
    std::ostringstream os_;
};

}  // namespace jetnf

#endif
