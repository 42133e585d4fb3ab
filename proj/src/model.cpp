#include "liemin/model.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <sstream>

#include "liemin/parse.hpp"

namespace liemin {
namespace {

std::string strip(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

std::vector<std::string> split_commas(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(strip(item));
    return out;
}

bool valid_identifier(const std::string& s) {
    if (s.empty()) return false;
    if (!std::isalpha(static_cast<unsigned char>(s[0])) && s[0] != '_') return false;
    return std::all_of(s.begin(), s.end(), [](char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
    });
}

}  // namespace

Model parse_model(const std::string& text) {
    Model model;
    std::vector<std::string> vars;
    std::map<std::string, Poly> equations;
    std::map<std::string, Rat> init;
    std::vector<std::string> template_lines;

    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        std::size_t hash = raw.find('#');
        if (hash != std::string::npos) raw = raw.substr(0, hash);
        std::string line = strip(raw);
        if (line.empty()) continue;

        if (line.rfind("vars:", 0) == 0) {
            if (!vars.empty()) throw ParseError("duplicate vars: line", lineno, 1);
            vars = split_commas(line.substr(5));
            if (vars.empty() || (vars.size() == 1 && vars[0].empty()))
                throw ParseError("vars: line declares no variables", lineno, 1);
            for (const auto& v : vars)
                if (!valid_identifier(v))
                    throw ParseError("invalid variable name '" + v + "'", lineno, 1);
            for (std::size_t i = 0; i < vars.size(); ++i)
                for (std::size_t j = i + 1; j < vars.size(); ++j)
                    if (vars[i] == vars[j])
                        throw ParseError("duplicate variable name '" + vars[i] + "'", lineno, 1);
            continue;
        }
        if (vars.empty()) throw ParseError("vars: line must come first", lineno, 1);

        if (line.rfind("init:", 0) == 0) {
            for (const auto& part : split_commas(line.substr(5))) {
                std::size_t eq = part.find('=');
                if (eq == std::string::npos)
                    throw ParseError("init entry missing '='", lineno, 1);
                std::string name = strip(part.substr(0, eq));
                std::string val = strip(part.substr(eq + 1));
                if (std::find(vars.begin(), vars.end(), name) == vars.end())
                    throw ParseError("init for undeclared variable '" + name + "'", lineno, 1);
                if (init.count(name))
                    throw ParseError("duplicate init for '" + name + "'", lineno, 1);
                init[name] = rat_from_string(val);
            }
            continue;
        }
        if (line.rfind("template:", 0) == 0) {
            template_lines.push_back(strip(line.substr(9)));
            continue;
        }

        std::size_t eq = line.find('=');
        std::size_t prime = line.find('\'');
        if (eq == std::string::npos || prime == std::string::npos || prime > eq)
            throw ParseError("expected equation of the form x' = <poly>", lineno, 1);
        std::string name = strip(line.substr(0, prime));
        if (std::find(vars.begin(), vars.end(), name) == vars.end())
            throw ParseError("equation for undeclared variable '" + name + "'", lineno, 1);
        if (equations.count(name))
            throw ParseError("duplicate equation for '" + name + "'", lineno, 1);
        equations[name] = parse_polynomial(line.substr(eq + 1), vars);
    }

    if (vars.empty()) throw ParseError("model has no vars: line", lineno, 1);
    for (const auto& v : vars) {
        if (!equations.count(v))
            throw ParseError("missing equation for variable '" + v + "'", lineno, 1);
        if (!init.count(v)) throw ParseError("missing init for variable '" + v + "'", lineno, 1);
    }

    model.ivp.var_names = vars;
    for (const auto& v : vars) {
        model.ivp.field.drifts.push_back(equations.at(v));
        model.ivp.v0.push_back(init.at(v));
    }
    model.ivp.validate();
    for (const auto& t : template_lines) model.templates.push_back(parse_template(t, vars));
    return model;
}

Model load_model(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open model file: " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return parse_model(ss.str());
}

std::string render_model(const Model& model) {
    std::ostringstream os;
    const auto& ivp = model.ivp;
    os << "vars: ";
    for (std::size_t i = 0; i < ivp.var_names.size(); ++i)
        os << (i ? ", " : "") << ivp.var_names[i];
    os << "\n";
    for (std::size_t i = 0; i < ivp.dim(); ++i)
        os << ivp.var_names[i] << "' = " << ivp.field.drifts[i].render(ivp.var_names) << "\n";
    os << "init: ";
    for (std::size_t i = 0; i < ivp.dim(); ++i)
        os << (i ? ", " : "") << ivp.var_names[i] << "=" << rat_to_string(ivp.v0[i]);
    os << "\n";
    for (const auto& t : model.templates)
        os << "template: " << t.render(ivp.var_names) << "\n";
    return os.str();
}

}  // namespace liemin
