#pragma once

#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "relaxtk/model.hpp"

namespace relaxtk {

// Runs an external solver through a command template with {input}/{output}
// placeholders, e.g. "python3 ref_lp_solve.py {input} {output}". The solution
// file is plain text: an optional "status <s>" line, an "objective <v>" line,
// then "<varname> <value>" lines.
class ExternalSolver {
public:
    explicit ExternalSolver(std::string command_template)
        : template_(std::move(command_template)) {
        if (template_.find("{input}") == std::string::npos ||
            template_.find("{output}") == std::string::npos)
            throw Error("solver command template must contain {input} and {output}");
    }

    SolveResult solve(const ModelIR& model) const {
        namespace fs = std::filesystem;
        fs::path dir = fs::temp_directory_path() /
                       ("relaxtk-" + std::to_string(::getpid()) + "-" +
                        std::to_string(counter_++));
        fs::create_directories(dir);
        fs::path in = dir / "model.lp";
        fs::path out = dir / "solution.txt";
        write_lp_file(model, in.string());

        std::string cmd = template_;
        replace_all(cmd, "{input}", in.string());
        replace_all(cmd, "{output}", out.string());
        int rc = std::system(cmd.c_str());
        if (rc == -1) throw Error("failed to spawn solver command: " + cmd);
        if (rc != 0)
            throw Error("solver command exited with status " + std::to_string(rc) + ": " + cmd);
        if (!fs::exists(out)) throw Error("solver produced no output file: " + out.string());

        SolveResult res = parse_solution_file(out.string(), model);
        fs::remove_all(dir);
        return res;
    }

    static SolveResult parse_solution_file(const std::string& path, const ModelIR& model) {
        std::ifstream f(path);
        if (!f) throw Error("cannot read solution file: " + path);
        SolveResult res;
        res.status = SolveStatus::Optimal;
        res.point.assign(model.vars.size(), 0.0);
        bool saw_objective = false;
        std::string line;
        while (std::getline(f, line)) {
            std::istringstream is(line);
            std::string head;
            if (!(is >> head)) continue;
            if (head == "status") {
                std::string s;
                is >> s;
                if (s == "optimal") res.status = SolveStatus::Optimal;
                else if (s == "infeasible") res.status = SolveStatus::Infeasible;
                else if (s == "unbounded") res.status = SolveStatus::Unbounded;
                else throw Error("unknown solver status: " + s);
            } else if (head == "objective") {
                if (!(is >> res.value)) throw Error("unparsable objective line: " + line);
                res.bound = res.value;
                saw_objective = true;
            } else {
                double v;
                if (!(is >> v)) throw Error("unparsable solution line: " + line);
                bool found = false;
                for (size_t j = 0; j < model.vars.size(); ++j)
                    if (model.vars[j].name == head) {
                        res.point[j] = v;
                        found = true;
                        break;
                    }
                if (!found) throw Error("solution references unknown variable: " + head);
            }
        }
        if (res.status == SolveStatus::Optimal) {
            if (!saw_objective) throw Error("solution file lacks an objective line");
            res.has_point = true;
        }
        return res;
    }

private:
    static void replace_all(std::string& s, const std::string& from, const std::string& to) {
        size_t pos = 0;
        while ((pos = s.find(from, pos)) != std::string::npos) {
            s.replace(pos, from.size(), to);
            pos += to.size();
        }
    }

    std::string template_;
    mutable long counter_ = 0;
};

inline SolveResult external_solve(const ModelIR& model, const std::string& command_template) {
    return ExternalSolver(command_template).solve(model);
}

}  // namespace relaxtk
