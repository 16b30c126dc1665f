#include "mgc/family.hpp"

#include <cstdio>
#include <set>

namespace mgc {

namespace {

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string short_digest(const std::string& key, int hex_digits) {
    std::uint64_t h = fnv1a(key);
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return std::string(buf, buf + hex_digits);
}

}  // namespace

FamilyRegistry::FamilyRegistry(const FamilyRegistry& other) {
    std::lock_guard<std::mutex> lock(other.mu_);
    families_ = other.families_;
    keys_ = other.keys_;
}

int FamilyRegistry::intern(std::vector<std::string> x_vars, std::vector<std::string> v_vars,
                           FormulaPtr body) {
    // Validate the descriptor before taking the lock.
    std::set<std::string> members;
    for (const auto& v : x_vars)
        if (!members.insert(v).second)
            throw std::invalid_argument("family tuple variables must be distinct: " + v);
    for (const auto& v : v_vars)
        if (!members.insert(v).second)
            throw std::invalid_argument("family X and V tuples must be disjoint: " + v);
    std::set<PredRef> preds;
    collect_preds(body, preds);
    for (const PredRef& p : preds)
        if (p.kind != PredKind::Plain || p.primed)
            throw std::invalid_argument("family body must be a formula over sigma_0");
    for (const auto& name : free_var_names(body))
        if (!members.count(name))
            throw std::invalid_argument("free variable " + name + " of family body is not in X or V");

    std::vector<std::string> roles = x_vars;
    roles.insert(roles.end(), v_vars.begin(), v_vars.end());
    std::string key = std::to_string(x_vars.size()) + ";" + std::to_string(v_vars.size()) + ";" +
                      canonical_key(body, roles);

    std::lock_guard<std::mutex> lock(mu_);
    for (std::size_t i = 0; i < keys_.size(); ++i)
        if (keys_[i] == key) return static_cast<int>(i);

    PredicateFamily fam;
    fam.x_vars = std::move(x_vars);
    fam.v_vars = std::move(v_vars);
    fam.body = std::move(body);
    int digits = 6;
    fam.digest = short_digest(key, digits);
    // Extend the digest until it differs from every existing one.
    auto clashes = [&](const std::string& d) {
        for (const auto& f : families_)
            if (f.digest == d) return true;
        return false;
    };
    while (clashes(fam.digest) && digits < 16) fam.digest = short_digest(key, ++digits);
    if (clashes(fam.digest)) fam.digest += "_" + std::to_string(families_.size());

    families_.push_back(std::move(fam));
    keys_.push_back(std::move(key));
    return static_cast<int>(families_.size()) - 1;
}

const PredicateFamily& FamilyRegistry::family(int id) const {
    std::lock_guard<std::mutex> lock(mu_);
    if (id < 0 || id >= static_cast<int>(families_.size()))
        throw std::out_of_range("unknown predicate family id " + std::to_string(id));
    return families_[static_cast<std::size_t>(id)];
}

int FamilyRegistry::size() const {
    std::lock_guard<std::mutex> lock(mu_);
    return static_cast<int>(families_.size());
}

std::string family_name(PredKind kind, const PredicateFamily& fam) {
    const char* base = kind == PredKind::Atleast ? "atleast"
                       : kind == PredKind::Atmost ? "atmost"
                       : kind == PredKind::Start  ? "start"
                                                  : "";
    if (*base == '\0') throw std::invalid_argument("family_name: plain predicates have no family");
    return std::string(base) + "_" + fam.digest;
}

std::string family_name(PredKind kind, const FamilyRegistry& reg, int id) {
    return family_name(kind, reg.family(id));
}

FormulaPtr mk_family_atom(PredKind kind, const FamilyRegistry& reg, int id,
                          std::vector<FoTermPtr> args, bool primed) {
    const PredicateFamily& fam = reg.family(id);
    PredRef p;
    p.kind = kind;
    p.family = id;
    p.primed = primed;
    p.arity = kind == PredKind::Start ? fam.start_arity() : fam.count_arity();
    return mk_atom(std::move(p), std::move(args));
}

}  // namespace mgc
