#pragma once

#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace catchforge::prompts {

class PromptError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class UnknownTemplate : public PromptError {
public:
    using PromptError::PromptError;
};

class MissingVariable : public PromptError {
public:
    explicit MissingVariable(const std::string& name)
        : PromptError("missing variable: " + name), name_(name) {}
    const std::string& name() const { return name_; }

private:
    std::string name_;
};

class UnknownVariable : public PromptError {
public:
    explicit UnknownVariable(const std::string& name)
        : PromptError("unknown variable: " + name), name_(name) {}
    const std::string& name() const { return name_; }

private:
    std::string name_;
};

/// Template body with [name] placeholders. Literal brackets are written
/// doubled: [[ renders as [ and ]] as ].
struct PromptTemplate {
    std::string id;
    std::string body;
    std::set<std::string> required_vars;
};

using Bindings = std::map<std::string, std::string>;

/// Placeholder names found in a body, escapes skipped.
std::set<std::string> scan_placeholders(const std::string& body);

/// Substitute every placeholder; bindings must cover required vars exactly.
std::string render_body(const std::string& body, const Bindings& bindings);

class PromptRegistry {
public:
    /// Registry preloaded with the bundled template set.
    static PromptRegistry builtin();

    /// Replace bodies from <dir>/<template_id>.txt for every file present.
    void override_from_directory(const std::string& dir);

    const PromptTemplate& get(const std::string& id) const;
    std::string render(const std::string& id, const Bindings& bindings) const;
    std::vector<std::string> ids() const;
    bool has(const std::string& id) const { return templates_.count(id) > 0; }

private:
    void add(std::string id, std::string body);
    std::map<std::string, PromptTemplate> templates_;
};

/// Bundled single-session-therapy knowledge text used as the system prompt
/// of every exported sample. Assembled from the glossary shipped with the
/// project; version-stamped so exports can be traced to a knowledge revision.
struct KnowledgeDoc {
    std::string text;
    std::string version;
};

const KnowledgeDoc& sst_knowledge();

}  // namespace catchforge::prompts
