#include "busytime/algorithms.hpp"

#include <algorithm>
#include <utility>

namespace busytime {

// ---------------------------------------------------------------------------
// UnboundedUniformScheduler

UnboundedUniformScheduler::UnboundedUniformScheduler(const Time& alpha) : alpha_(alpha) {
    if (alpha < 0 || !(alpha < 1)) throw ConfigError("alpha must lie in [0, 1)");
}

std::string UnboundedUniformScheduler::name() const {
    return "unbounded-uniform:alpha=" + time_to_string(alpha_);
}

void UnboundedUniformScheduler::on_begin(const BeginInfo& info) {
    if (!info.g.is_unbounded())
        throw PreconditionError("unbounded-uniform requires unbounded parallelism");
    p_.reset();
    pending_.clear();
    committed_ = IntervalSet{};
    flags_.clear();
    if (info.static_jobs)
        for (const Job& j : *info.static_jobs) note_processing(j.processing);
}

void UnboundedUniformScheduler::note_processing(const Time& p) {
    if (!p_)
        p_ = p;
    else if (*p_ != p)
        throw PreconditionError("unbounded-uniform requires equal processing times");
}

void UnboundedUniformScheduler::on_reveal(SimContext& ctx, const Job& job) {
    note_processing(job.processing);
    pending_.push_back(job.id);
    step(ctx);
}

void UnboundedUniformScheduler::on_time(SimContext& ctx) { step(ctx); }

void UnboundedUniformScheduler::step(SimContext& ctx) {
    const Time now = ctx.now();
    bool progress = true;
    while (progress) {
        progress = false;
        std::sort(pending_.begin(), pending_.end());
        // jobs whose whole interval is already paid for start right away
        std::vector<int> keep;
        for (int id : pending_) {
            const Job& j = ctx.job(id);
            if (committed_.covers(now, now + j.processing)) {
                ctx.start_job(id, 0, now);
                progress = true;
            } else {
                keep.push_back(id);
            }
        }
        pending_.swap(keep);
        // one job at its latest start opens a new committed stretch
        for (int id : pending_) {
            const Job& j = ctx.job(id);
            if (now < j.latest_start()) continue;
            Time open_until = now + j.processing * (Time(1) + alpha_);
            committed_.insert(now, open_until);
            flags_.push_back(FlagRecord{id, now, open_until});
            ctx.start_job(id, 0, now);
            pending_.erase(std::find(pending_.begin(), pending_.end(), id));
            progress = true;
            break;
        }
    }
}

Time UnboundedUniformScheduler::reported_cost(const Instance&, const Schedule&) const {
    return committed_.span();
}

// ---------------------------------------------------------------------------
// UnboundedAgreeableScheduler

void UnboundedAgreeableScheduler::on_begin(const BeginInfo& info) {
    if (!info.g.is_unbounded())
        throw PreconditionError("unbounded-agreeable requires unbounded parallelism");
    pending_.clear();
    seen_.clear();
    started_ = IntervalSet{};
    flags_.clear();
    if (info.static_jobs) {
        Instance probe{info.g, info.lookahead, *info.static_jobs};
        if (!classify(probe).agreeable)
            throw PreconditionError("unbounded-agreeable requires an agreeable instance");
    }
}

void UnboundedAgreeableScheduler::note_job(const Job& job) {
    for (const auto& [r, d] : seen_) {
        bool crossed = (r < job.release && job.deadline < d) || (job.release < r && d < job.deadline);
        if (crossed) throw PreconditionError("unbounded-agreeable requires an agreeable instance");
    }
    seen_.emplace_back(job.release, job.deadline);
}

void UnboundedAgreeableScheduler::on_reveal(SimContext& ctx, const Job& job) {
    note_job(job);
    pending_.push_back(job.id);
    step(ctx);
}

void UnboundedAgreeableScheduler::on_time(SimContext& ctx) { step(ctx); }

bool UnboundedAgreeableScheduler::flag_open(const Time& now) const {
    for (const FlagRecord& f : flags_)
        if (!(now < f.flag_start) && now < f.open_until) return true;
    return false;
}

void UnboundedAgreeableScheduler::step(SimContext& ctx) {
    const Time now = ctx.now();
    bool progress = true;
    while (progress) {
        progress = false;
        std::sort(pending_.begin(), pending_.end());
        if (flag_open(now)) {
            // everything pending rides along with the open flag
            for (int id : pending_) {
                const Job& j = ctx.job(id);
                started_.insert(now, now + j.processing);
                ctx.start_job(id, 0, now);
                progress = true;
            }
            pending_.clear();
            continue;
        }
        // jobs whose interval is already busy start without a new flag
        std::vector<int> keep;
        for (int id : pending_) {
            const Job& j = ctx.job(id);
            if (started_.covers(now, now + j.processing)) {
                ctx.start_job(id, 0, now);
                progress = true;
            } else {
                keep.push_back(id);
            }
        }
        pending_.swap(keep);
        // one job at its latest start opens a flag that stays open until d
        for (int id : pending_) {
            const Job& j = ctx.job(id);
            if (now < j.latest_start()) continue;
            flags_.push_back(FlagRecord{id, now, j.deadline});
            started_.insert(now, now + j.processing);
            ctx.start_job(id, 0, now);
            pending_.erase(std::find(pending_.begin(), pending_.end(), id));
            progress = true;
            break;
        }
    }
}

// ---------------------------------------------------------------------------
// UniformBoundedScheduler

void UniformBoundedScheduler::on_begin(const BeginInfo& info) {
    if (info.g.is_unbounded() || info.g.value() < 2)
        throw PreconditionError("uniform-bounded requires finite parallelism of at least 2");
    g_ = info.g.value();
    p_.reset();
    pending_.clear();
    bundles_.clear();
    if (info.static_jobs)
        for (const Job& j : *info.static_jobs) note_processing(j.processing);
}

void UniformBoundedScheduler::note_processing(const Time& p) {
    if (!p_)
        p_ = p;
    else if (*p_ != p)
        throw PreconditionError("uniform-bounded requires equal processing times");
}

void UniformBoundedScheduler::on_reveal(SimContext& ctx, const Job& job) {
    note_processing(job.processing);
    pending_.push_back(job.id);
    step(ctx);
}

void UniformBoundedScheduler::on_time(SimContext& ctx) { step(ctx); }

bool UniformBoundedScheduler::try_join(SimContext& ctx, int id) {
    const Time now = ctx.now();
    for (UniformBundle& b : bundles_) {
        if (static_cast<long>(b.member_ids.size()) >= g_) continue;
        if (now < b.flag_start || b.flag_start + *p_ < now) continue;
        ctx.start_job(id, b.machine, now);
        b.member_ids.push_back(id);
        return true;
    }
    return false;
}

void UniformBoundedScheduler::step(SimContext& ctx) {
    const Time now = ctx.now();
    bool progress = true;
    while (progress) {
        progress = false;
        // most urgent jobs first fill machines whose window is still open
        std::vector<int> order = pending_;
        std::sort(order.begin(), order.end(), [&](int a, int b) {
            const Job& ja = ctx.job(a);
            const Job& jb = ctx.job(b);
            if (ja.deadline != jb.deadline) return ja.deadline < jb.deadline;
            return a < b;
        });
        for (int id : order) {
            if (try_join(ctx, id)) {
                pending_.erase(std::find(pending_.begin(), pending_.end(), id));
                progress = true;
            }
        }
        // one job at its latest start rents a fresh machine
        std::sort(pending_.begin(), pending_.end());
        for (int id : pending_) {
            const Job& j = ctx.job(id);
            if (now < j.latest_start()) continue;
            UniformBundle b;
            b.machine = static_cast<int>(bundles_.size());
            b.flag_id = id;
            b.flag_start = now;
            b.member_ids.push_back(id);
            ctx.start_job(id, b.machine, now);
            bundles_.push_back(std::move(b));
            pending_.erase(std::find(pending_.begin(), pending_.end(), id));
            progress = true;
            break;
        }
    }
}

// ---------------------------------------------------------------------------
// Fixers

namespace {

class DefaultFixer final : public Fixer {
public:
    std::string name() const override { return "default"; }
    void begin() override { virt_ = IntervalSet{}; }
    Time fix(const Job& job, const Time&) override {
        const Time lo = job.release;
        const Time hi = job.latest_start();
        for (const auto& [a, b] : virt_.intervals()) {
            Time slo = std::max(a, lo);
            Time fit = b - job.processing;
            Time shi = std::min(fit, hi);
            if (!(shi < slo)) return slo;
        }
        virt_.insert(hi, job.deadline);
        return hi;
    }

private:
    IntervalSet virt_;
};

class LatestStartFixer final : public Fixer {
public:
    std::string name() const override { return "latest"; }
    Time fix(const Job& job, const Time&) override { return job.latest_start(); }
};

}  // namespace

std::unique_ptr<Fixer> make_default_fixer() { return std::make_unique<DefaultFixer>(); }
std::unique_ptr<Fixer> make_latest_start_fixer() { return std::make_unique<LatestStartFixer>(); }

// ---------------------------------------------------------------------------
// GreedyTrackingScheduler

namespace {

/// Preference order for the successor reservation of one track pair:
/// jobs starting by the frontier's end come first (latest fixed end wins),
/// then jobs beyond it (earliest fixed start wins); ids break ties.
bool prefer_successor(const Time& frontier_end, int x_id, const Time& x_start, const Time& x_end,
                      int y_id, const Time& y_start, const Time& y_end) {
    bool x_near = !(frontier_end < x_start);
    bool y_near = !(frontier_end < y_start);
    if (x_near != y_near) return x_near;
    if (x_near) {
        if (x_end != y_end) return y_end < x_end;
        return x_id < y_id;
    }
    if (x_start != y_start) return x_start < y_start;
    return x_id < y_id;
}

}  // namespace

GreedyTrackingScheduler::GreedyTrackingScheduler(std::unique_ptr<Fixer> fixer)
    : fixer_(fixer ? std::move(fixer) : make_default_fixer()) {}

std::string GreedyTrackingScheduler::name() const {
    return "greedy-tracking:fixer=" + fixer_->name();
}

void GreedyTrackingScheduler::on_begin(const BeginInfo& info) {
    if (info.g.is_unbounded() || info.g.value() < 2)
        throw PreconditionError("greedy-tracking requires finite parallelism of at least 2");
    pairs_per_bundle_ = info.g.value() / 2;
    lookahead_ = info.lookahead;
    if (info.static_jobs)
        for (const Job& j : *info.static_jobs)
            if (lookahead_ < j.processing)
                throw PreconditionError(
                    "greedy-tracking requires lookahead at least the longest processing time");
    fixer_->begin();
    fixed_.clear();
    pool_.clear();
    pairs_.clear();
}

void GreedyTrackingScheduler::on_reveal(SimContext& ctx, const Job& job) {
    if (lookahead_ < job.processing)
        throw PreconditionError(
            "greedy-tracking requires lookahead at least the longest processing time");
    Time s = fixer_->fix(job, ctx.now());
    if (s < job.release || job.latest_start() < s)
        throw ProtocolError("fixer chose a start outside the job window");
    fixed_[job.id] = FixedJob{job.id, s, s + job.processing};
    pool_.insert(job.id);
    if (ctx.now() < s) ctx.wake_at(s);
    step(ctx);
}

void GreedyTrackingScheduler::on_time(SimContext& ctx) { step(ctx); }

bool GreedyTrackingScheduler::eligible(const TrackPair& pair, const FixedJob& fj) const {
    // eligible when some track can take the job without overlap
    for (int k = 0; k < 2; ++k) {
        if (pair.tracks[k].empty() || !(fj.start < pair.tracks[k].back().end)) return true;
    }
    return false;
}

void GreedyTrackingScheduler::refresh_reservations() {
    bool changed = true;
    int rounds = 0;
    const int limit =
        64 + 4 * static_cast<int>(fixed_.size()) * std::max(1, static_cast<int>(pairs_.size()));
    while (changed) {
        changed = false;
        if (++rounds > limit) throw ConstructionError("reservation refresh failed to settle");
        for (TrackPair& pair : pairs_) {
            std::optional<FixedJob> best;
            if (pair.reserved) best = fixed_.at(*pair.reserved);
            for (int id : pool_) {
                const FixedJob& fj = fixed_.at(id);
                if (!eligible(pair, fj)) continue;
                if (!best || prefer_successor(pair.frontier.end, fj.id, fj.start, fj.end,
                                              best->id, best->start, best->end))
                    best = fj;
            }
            if (!best) continue;
            if (pair.reserved && *pair.reserved == best->id) continue;
            if (pair.reserved) pool_.insert(*pair.reserved);
            pool_.erase(best->id);
            pair.reserved = best->id;
            changed = true;
        }
    }
}

void GreedyTrackingScheduler::place(SimContext& ctx, TrackPair& pair, const FixedJob& fj) {
    int tr;
    if (pair.tracks[0].empty())
        tr = 0;
    else if (pair.tracks[1].empty())
        tr = 1;
    else
        tr = pair.tracks[1].back().end < pair.tracks[0].back().end ? 1 : 0;
    if (!pair.tracks[tr].empty() && fj.start < pair.tracks[tr].back().end)
        throw ConstructionError("track placement would overlap the previous job");
    pair.tracks[tr].push_back(fj);
    pair.frontier = fj;
    ctx.start_job(fj.id, pair.machine, fj.start);
}

void GreedyTrackingScheduler::step(SimContext& ctx) {
    const Time now = ctx.now();
    refresh_reservations();
    bool progress = true;
    while (progress) {
        progress = false;
        // reserved jobs whose fixed start arrived take their pair's free track
        for (TrackPair& pair : pairs_) {
            if (!pair.reserved) continue;
            FixedJob fj = fixed_.at(*pair.reserved);
            if (now < fj.start) continue;
            if (fj.start < now) throw ConstructionError("reserved job passed its fixed start");
            pair.reserved.reset();
            place(ctx, pair, fj);
            refresh_reservations();
            progress = true;
            break;
        }
        if (progress) continue;
        // a due job nobody reserved opens the next pair
        std::optional<FixedJob> due;
        for (int id : pool_) {
            const FixedJob& fj = fixed_.at(id);
            if (fj.start < now) throw ConstructionError("pooled job passed its fixed start");
            if (fj.start == now) {
                if (!due || due->end < fj.end || (due->end == fj.end && fj.id < due->id)) due = fj;
            }
        }
        if (due) {
            TrackPair pair;
            pair.index = static_cast<int>(pairs_.size());
            pair.machine = pair.index / static_cast<int>(pairs_per_bundle_);
            pool_.erase(due->id);
            pairs_.push_back(std::move(pair));
            place(ctx, pairs_.back(), *due);
            refresh_reservations();
            progress = true;
        }
    }
}

std::vector<TrackPairView> GreedyTrackingScheduler::pairs() const {
    std::vector<TrackPairView> out;
    for (const TrackPair& p : pairs_) {
        TrackPairView v;
        v.index = p.index;
        v.machine = p.machine;
        v.reserved = p.reserved;
        for (const FixedJob& f : p.tracks[0]) v.track_a.emplace_back(f.start, f.end);
        for (const FixedJob& f : p.tracks[1]) v.track_b.emplace_back(f.start, f.end);
        out.push_back(std::move(v));
    }
    return out;
}

std::optional<Time> GreedyTrackingScheduler::fixed_start(int id) const {
    auto it = fixed_.find(id);
    if (it == fixed_.end()) return std::nullopt;
    return it->second.start;
}

// ---------------------------------------------------------------------------
// Registry

namespace {

std::vector<std::pair<std::string, std::string>> parse_options(const std::string& rest) {
    std::vector<std::pair<std::string, std::string>> kvs;
    std::size_t pos = 0;
    while (pos < rest.size()) {
        std::size_t comma = rest.find(',', pos);
        std::string tok =
            comma == std::string::npos ? rest.substr(pos) : rest.substr(pos, comma - pos);
        pos = comma == std::string::npos ? rest.size() : comma + 1;
        std::size_t eq = tok.find('=');
        if (eq == std::string::npos)
            throw ConfigError("scheduler option must be key=value, got: " + tok);
        kvs.emplace_back(tok.substr(0, eq), tok.substr(eq + 1));
    }
    return kvs;
}

}  // namespace

std::unique_ptr<Scheduler> make_scheduler(const std::string& spec) {
    std::string head = spec;
    std::string rest;
    if (std::size_t colon = spec.find(':'); colon != std::string::npos) {
        head = spec.substr(0, colon);
        rest = spec.substr(colon + 1);
    }
    auto kvs = parse_options(rest);
    if (head == "unbounded-uniform") {
        Time alpha = 0;
        for (const auto& [k, v] : kvs) {
            if (k == "alpha")
                alpha = parse_time(v);
            else
                throw ConfigError("unknown unbounded-uniform option: " + k);
        }
        return std::make_unique<UnboundedUniformScheduler>(alpha);
    }
    if (head == "unbounded-agreeable") {
        if (!kvs.empty()) throw ConfigError("unbounded-agreeable takes no options");
        return std::make_unique<UnboundedAgreeableScheduler>();
    }
    if (head == "uniform-bounded") {
        if (!kvs.empty()) throw ConfigError("uniform-bounded takes no options");
        return std::make_unique<UniformBoundedScheduler>();
    }
    if (head == "greedy-tracking") {
        std::unique_ptr<Fixer> fixer;
        for (const auto& [k, v] : kvs) {
            if (k == "fixer") {
                if (v == "default")
                    fixer = make_default_fixer();
                else if (v == "latest")
                    fixer = make_latest_start_fixer();
                else
                    throw ConfigError("unknown fixer: " + v);
            } else {
                throw ConfigError("unknown greedy-tracking option: " + k);
            }
        }
        return std::make_unique<GreedyTrackingScheduler>(std::move(fixer));
    }
    throw ConfigError("unknown scheduler: " + head);
}

}  // namespace busytime
