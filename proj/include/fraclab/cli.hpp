#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "fraclab/support.hpp"

namespace fraclab {

/// Invalid command line or parameter combination. CLI maps this to exit 2.
class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Flat command + key=value run configuration.
///
/// Sources, in increasing precedence: a --config file of key=value lines,
/// then command-line flags. Identical configurations produce bit-identical
/// outputs; nothing here reads clocks, locales or the environment.
struct RunConfig {
    std::string command;
    std::map<std::string, std::string> params;

    static std::map<std::string, std::string> load_file(const std::string& path) {
        std::ifstream is(path);
        if (!is) throw UsageError("config file not readable: " + path);
        std::map<std::string, std::string> kv;
        std::string line;
        while (std::getline(is, line)) {
            if (line.empty() || line[0] == '#') continue;
            const auto eq = line.find('=');
            if (eq == std::string::npos)
                throw UsageError("config line is not key=value: " + line);
            kv[line.substr(0, eq)] = line.substr(eq + 1);
        }
        return kv;
    }

    static RunConfig from_args(int argc, const char* const* argv) {
        RunConfig cfg;
        if (argc < 2) throw UsageError("missing command");
        cfg.command = argv[1];
        std::map<std::string, std::string> flags;
        for (int i = 2; i < argc; ++i) {
            std::string tok = argv[i];
            if (tok.rfind("--", 0) != 0)
                throw UsageError("expected --key [value], got: " + tok);
            tok = tok.substr(2);
            std::string value;
            const auto eq = tok.find('=');
            if (eq != std::string::npos) {
                value = tok.substr(eq + 1);
                tok = tok.substr(0, eq);
            } else {
                if (i + 1 >= argc) throw UsageError("flag --" + tok + " needs a value");
                value = argv[++i];
            }
            flags[tok] = value;
        }
        if (auto it = flags.find("config"); it != flags.end()) {
            cfg.params = load_file(it->second);
            flags.erase(it);
        }
        for (auto& [k, v] : flags) cfg.params[k] = v;
        return cfg;
    }

    bool has(const std::string& key) const { return params.count(key) != 0; }

    std::string str(const std::string& key, const std::string& fallback) const {
        auto it = params.find(key);
        return it == params.end() ? fallback : it->second;
    }

    std::string require(const std::string& key) const {
        auto it = params.find(key);
        if (it == params.end()) throw UsageError("missing required parameter --" + key);
        return it->second;
    }

    double num(const std::string& key) const { return parse_num(key, require(key)); }
    double num(const std::string& key, double fallback) const {
        auto it = params.find(key);
        return it == params.end() ? fallback : parse_num(key, it->second);
    }
    int integer(const std::string& key) const {
        const double v = num(key);
        const int i = static_cast<int>(v);
        if (i != v) throw UsageError("parameter --" + key + " must be an integer");
        return i;
    }
    int integer(const std::string& key, int fallback) const {
        return has(key) ? integer(key) : fallback;
    }

private:
    static double parse_num(const std::string& key, const std::string& text) {
        try {
            std::size_t pos = 0;
            const double v = std::stod(text, &pos);
            if (pos != text.size()) throw std::invalid_argument(text);
            return v;
        } catch (const std::exception&) {
            throw UsageError("parameter --" + key + " is not a number: " + text);
        }
    }
};

/// Output sink for a command: collects artifacts under outdir and writes a
/// manifest echoing the resolved configuration plus content checksums.
class ArtifactWriter {
public:
    explicit ArtifactWriter(std::string outdir) : outdir_(std::move(outdir)) {
        if (!outdir_.empty()) std::filesystem::create_directories(outdir_);
    }

    bool enabled() const { return !outdir_.empty(); }

    std::string path(const std::string& name) const {
        return (std::filesystem::path(outdir_) / name).string();
    }

    void write(const std::string& name, const std::string& content) {
        if (!enabled()) return;
        std::ofstream os(path(name), std::ios::binary);
        if (!os) throw std::runtime_error("cannot write " + path(name));
        os << content;
        artifacts_.emplace_back(name, content);
    }

    void finalize(const RunConfig& cfg) {
        if (!enabled()) return;
        std::ostringstream m;
        m << "command=" << cfg.command << "\n";
        for (const auto& [k, v] : cfg.params) m << k << "=" << v << "\n";
        for (const auto& [name, content] : artifacts_) {
            char hex[17];
            std::snprintf(hex, sizeof(hex), "%016llx",
                          static_cast<unsigned long long>(
                              fnv1a64(content.data(), content.size())));
            m << "artifact=" << name << " bytes=" << content.size()
              << " fnv1a64=" << hex << "\n";
        }
        std::ofstream os(path("manifest"), std::ios::binary);
        if (!os) throw std::runtime_error("cannot write manifest");
        os << m.str();
    }

private:
    std::string outdir_;
    std::vector<std::pair<std::string, std::string>> artifacts_;
};

} // namespace fraclab
