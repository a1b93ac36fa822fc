#include "catchforge/prompts/registry.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

namespace catchforge::prompts {

std::set<std::string> scan_placeholders(const std::string& body) {
    std::set<std::string> out;
    size_t i = 0;
    while (i < body.size()) {
        if (body.compare(i, 2, "[[") == 0 || body.compare(i, 2, "]]") == 0) {
            i += 2;
            continue;
        }
        if (body[i] == '[') {
            size_t end = body.find(']', i + 1);
            if (end == std::string::npos)
                throw PromptError("unterminated placeholder at offset " + std::to_string(i));
            out.insert(body.substr(i + 1, end - i - 1));
            i = end + 1;
            continue;
        }
        ++i;
    }
    return out;
}

std::string render_body(const std::string& body, const Bindings& bindings) {
    auto required = scan_placeholders(body);
    for (const auto& name : required)
        if (!bindings.count(name)) throw MissingVariable(name);
    for (const auto& [name, _] : bindings)
        if (!required.count(name)) throw UnknownVariable(name);

    std::string out;
    out.reserve(body.size());
    size_t i = 0;
    while (i < body.size()) {
        if (body.compare(i, 2, "[[") == 0) {
            out += '[';
            i += 2;
        } else if (body.compare(i, 2, "]]") == 0) {
            out += ']';
            i += 2;
        } else if (body[i] == '[') {
            size_t end = body.find(']', i + 1);
            out += bindings.at(body.substr(i + 1, end - i - 1));
            i = end + 1;
        } else {
            out += body[i++];
        }
    }
    return out;
}

void PromptRegistry::add(std::string id, std::string body) {
    PromptTemplate t;
    t.id = id;
    t.required_vars = scan_placeholders(body);
    t.body = std::move(body);
    templates_[std::move(id)] = std::move(t);
}

void PromptRegistry::override_from_directory(const std::string& dir) {
    namespace fs = std::filesystem;
    if (!fs::is_directory(dir)) throw PromptError("not a directory: " + dir);
    for (auto& [id, tpl] : templates_) {
        fs::path p = fs::path(dir) / (id + ".txt");
        if (!fs::exists(p)) continue;
        std::ifstream in(p);
        std::ostringstream ss;
        ss << in.rdbuf();
        tpl.body = ss.str();
        tpl.required_vars = scan_placeholders(tpl.body);
    }
}

const PromptTemplate& PromptRegistry::get(const std::string& id) const {
    auto it = templates_.find(id);
    if (it == templates_.end()) throw UnknownTemplate("unknown template: " + id);
    return it->second;
}

std::string PromptRegistry::render(const std::string& id, const Bindings& bindings) const {
    return render_body(get(id).body, bindings);
}

std::vector<std::string> PromptRegistry::ids() const {
    std::vector<std::string> out;
    out.reserve(templates_.size());
    for (const auto& [id, _] : templates_) out.push_back(id);
    return out;
}

namespace detail {
// defined in builtin.cpp
extern const std::vector<std::pair<const char*, const char*>>& builtin_templates();
}  // namespace detail

PromptRegistry PromptRegistry::builtin() {
    PromptRegistry reg;
    for (const auto& [id, body] : detail::builtin_templates()) reg.add(id, body);
    return reg;
}

}  // namespace catchforge::prompts
