#include "tracekc/compile/dimacs.hpp"

#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "tracekc/error.hpp"

namespace tracekc {

CnfFormula read_dimacs(std::istream& in) {
    CnfFormula cnf;
    bool have_header = false;
    std::size_t declared_clauses = 0;
    Clause current;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream ls(line);
        std::string tok;
        if (!(ls >> tok)) continue;
        if (tok == "c" || tok[0] == 'c' || tok == "%") continue;
        if (tok == "p") {
            std::string fmt;
            long long nv = -1, nc = -1;
            if (have_header || !(ls >> fmt >> nv >> nc) || fmt != "cnf" || nv < 0 || nc < 0)
                throw DataError("dimacs line " + std::to_string(line_no) + ": bad problem line");
            cnf.num_vars = static_cast<std::size_t>(nv);
            declared_clauses = static_cast<std::size_t>(nc);
            have_header = true;
            continue;
        }
        if (!have_header) throw DataError("dimacs: clause before 'p cnf' header");
        ls.clear();
        ls.seekg(0);
        long long lit;
        while (ls >> lit) {
            if (lit == 0) {
                cnf.clauses.push_back(std::move(current));
                current.clear();
                continue;
            }
            if (static_cast<std::size_t>(lit < 0 ? -lit : lit) > cnf.num_vars)
                throw DataError("dimacs line " + std::to_string(line_no) + ": literal exceeds variable count");
            current.push_back(Literal::from_dimacs(lit));
        }
        if (!ls.eof()) throw DataError("dimacs line " + std::to_string(line_no) + ": non-integer token");
    }
    if (!have_header) throw DataError("dimacs: missing 'p cnf' header");
    if (!current.empty()) throw DataError("dimacs: last clause is not terminated by 0");
    if (cnf.clauses.size() != declared_clauses)
        throw DataError("dimacs: header declares " + std::to_string(declared_clauses) + " clauses, found " +
                        std::to_string(cnf.clauses.size()));
    return cnf;
}

void write_dimacs(const CnfFormula& cnf, std::ostream& out) {
    out << "p cnf " << cnf.num_vars << ' ' << cnf.clauses.size() << '\n';
    for (const Clause& c : cnf.clauses) {
        for (Literal l : c) out << l.to_dimacs() << ' ';
        out << "0\n";
    }
}

}  // namespace tracekc
