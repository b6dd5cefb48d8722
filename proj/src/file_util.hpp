#pragma once

#include "boxwing/errors.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace boxwing::detail {

inline std::string read_text_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_text_file(const std::string& path, const std::string& text,
                            bool allow_overwrite) {
    if (!allow_overwrite && std::filesystem::exists(path))
        throw InputError("refusing to overwrite '" + path + "' (pass --force)");
    std::ofstream out(path);
    if (!out) throw InputError("cannot write '" + path + "'");
    out << text;
    if (!out) throw InputError("write to '" + path + "' failed");
}

} // namespace boxwing::detail
