#pragma once

#include <condition_variable>
#include <deque>
#include <mutex>
#include <thread>

#include <json.hpp>

#include "polyenum/io.hpp"
#include "polyenum/reverse_search.hpp"

namespace polyenum {

/**
 * Budgeted manager-worker parallelization of the reverse search.
 *
 * The manager first enumerates the tree to a fixed depth (seeding); the
 * unexplored subtree roots become jobs in a FIFO queue.  Workers replay
 * a job's dictionary from its cobasis, explore its subtree under a node
 * budget, and return the still-unexplored subtree roots as new jobs.
 * Budgets adapt to the queue: a short queue means workers may starve,
 * so jobs get a small budget and split quickly; a long queue gets a
 * scaled-up budget to cut replay overhead.  No output is lost or
 * duplicated because every tree node is visited by exactly one budgeted
 * traversal.
 */
struct ParallelParams {
    int workers = 1;
    int initDepth = 2;           // seeding depth
    int lmin = 3;                // queue is short when below lmin * workers
    int maxc = 50;               // node budget for a short queue
    int scale = 100;             // long-queue budget multiplier
    std::size_t maxbufBytes = 512000; // output chunk size bound
};

struct Job {
    std::uint64_t id = 0;
    CobasisRecord root;
    Budget budget; // assigned at dispatch time, not when queued
};

/** Per-job counters; output rows travel separately in chunks. */
struct WorkerResult {
    std::uint64_t jobId = 0;
    std::uint64_t bases = 0;
    std::uint64_t outputCount = 0;
    long maxDepthSeen = 0;
    std::vector<CobasisRecord> unexplored;
};

struct RunReport {
    std::uint64_t totalBases = 0;
    std::uint64_t totalOutputs = 0;
    double wallSeconds = 0;
    std::uint64_t jobsDispatched = 0;
    std::size_t peakQueueLength = 0;
};

/** wire format: Job and WorkerResult round-trip through JSON. */
inline void to_json(nlohmann::json& j, const Budget& b) {
    j = nlohmann::json::object();
    if (b.maxNodes) j["maxNodes"] = *b.maxNodes;
    if (b.maxDepth) j["maxDepth"] = *b.maxDepth;
}
inline void from_json(const nlohmann::json& j, Budget& b) {
    b = {};
    if (j.contains("maxNodes")) b.maxNodes = j.at("maxNodes").get<std::uint64_t>();
    if (j.contains("maxDepth")) b.maxDepth = j.at("maxDepth").get<std::uint64_t>();
}
inline void to_json(nlohmann::json& j, const CobasisRecord& r) {
    j = {{"cobasis", r.cobasis}, {"depth", r.depth}, {"emitsOutput", r.emitsOutput}};
}
inline void from_json(const nlohmann::json& j, CobasisRecord& r) {
    j.at("cobasis").get_to(r.cobasis);
    j.at("depth").get_to(r.depth);
    j.at("emitsOutput").get_to(r.emitsOutput);
}
inline void to_json(nlohmann::json& j, const Job& job) {
    j = {{"id", job.id}, {"root", job.root}, {"budget", job.budget}};
}
inline void from_json(const nlohmann::json& j, Job& job) {
    j.at("id").get_to(job.id);
    j.at("root").get_to(job.root);
    j.at("budget").get_to(job.budget);
}
inline void to_json(nlohmann::json& j, const WorkerResult& w) {
    j = {{"jobId", w.jobId},
         {"bases", w.bases},
         {"outputCount", w.outputCount},
         {"maxDepthSeen", w.maxDepthSeen},
         {"unexplored", w.unexplored}};
}
inline void from_json(const nlohmann::json& j, WorkerResult& w) {
    j.at("jobId").get_to(w.jobId);
    j.at("bases").get_to(w.bases);
    j.at("outputCount").get_to(w.outputCount);
    j.at("maxDepthSeen").get_to(w.maxDepthSeen);
    j.at("unexplored").get_to(w.unexplored);
}

/**
 * Node budget for the next dispatched job, from the queue length right
 * after removing that job.
 */
inline Budget effective_budget(std::size_t queueLength, const ParallelParams& par) {
    Budget b;
    const std::size_t shortBound = static_cast<std::size_t>(par.lmin) * static_cast<std::size_t>(par.workers);
    if (queueLength < shortBound)
        b.maxNodes = static_cast<std::uint64_t>(par.maxc);
    else
        b.maxNodes = static_cast<std::uint64_t>(par.maxc) * static_cast<std::uint64_t>(par.scale);
    return b;
}

/** Output transport: rows of one flush, tagged by the producing job. */
template <class R>
using RowLift = std::function<Vec<BigRat>(const Vec<R>&)>;
using ChunkSink = std::function<void(std::uint64_t jobId, std::vector<Vec<BigRat>>&&)>;

namespace detail {

/** Buffers lifted rows and flushes them in chunks of at most maxbufBytes (serialized size). */
class ChunkBuffer {
public:
    ChunkBuffer(std::uint64_t jobId, const ChunkSink& sink, std::size_t maxbufBytes)
        : jobId_(jobId), sink_(sink), cap_(maxbufBytes) {}

    void push(Vec<BigRat> row) {
        const std::size_t sz = serialize_row(row).size() + 1; // line plus newline
        if (!rows_.empty() && bytes_ + sz > cap_) flush();
        rows_.push_back(std::move(row));
        bytes_ += sz;
    }

    void flush() {
        if (rows_.empty()) return;
        sink_(jobId_, std::move(rows_));
        rows_.clear();
        bytes_ = 0;
    }

private:
    std::uint64_t jobId_;
    const ChunkSink& sink_;
    std::size_t cap_;
    std::vector<Vec<BigRat>> rows_;
    std::size_t bytes_ = 0;
};

} // namespace detail

/**
 * Execute one job: rebuild the dictionary at the job's cobasis, verify
 * it, run the budgeted traversal, stream lifted output rows through the
 * chunk sink.  An infeasible or singular job root indicates a corrupted
 * job and surfaces as InternalError.
 */
template <class R>
WorkerResult run_worker(const Job& job, const PivotSystem<R>& sys, const RowLift<R>& lift,
                        const ChunkSink& sink, std::size_t maxbufBytes,
                        const RunLimits* limits = nullptr) {
    Dictionary<R> D = dictionary_at(sys, job.root.cobasis, job.root.depth);
    if (!lex_feasible(D))
        throw InternalError("worker: job root dictionary is not lexicographically feasible");
    detail::ChunkBuffer buf(job.id, sink, maxbufBytes);
    const std::function<void(const Vec<R>&)> s = [&](const Vec<R>& v) { buf.push(lift(v)); };
    EnumerationResult<R> res = enumerate(sys, std::move(D), job.budget, &s, limits);
    buf.flush();
    return WorkerResult{job.id, res.bases, res.outputCount, res.maxDepthSeen, std::move(res.unexplored)};
}

/**
 * Seeding pass: enumerate to initDepth, emit the shallow outputs, and
 * convert the unexplored boundary into the initial job queue.  Queued
 * jobs carry no budget yet; budgets are assigned at dispatch.
 */
template <class R>
std::pair<EnumerationResult<R>, std::deque<Job>> seed_jobs(const PivotSystem<R>& sys,
                                                           const ParallelParams& par,
                                                           const std::function<void(const Vec<R>&)>* sink = nullptr,
                                                           const RunLimits* limits = nullptr) {
    if (par.initDepth < 0) throw std::invalid_argument("seed_jobs: negative seeding depth");
    Budget b;
    b.maxDepth = static_cast<std::uint64_t>(par.initDepth);
    EnumerationResult<R> res = enumerate(sys, b, sink, limits);
    std::deque<Job> queue;
    std::uint64_t id = 1;
    for (CobasisRecord& rec : res.unexplored) queue.push_back(Job{id++, std::move(rec), Budget{}});
    res.unexplored.clear();
    return {std::move(res), std::move(queue)};
}

/** RunReport plus merged tree statistics that only the caller needs. */
struct ManagerOutcome {
    RunReport report;
    long maxDepthSeen = 0;
};

/**
 * Run the full manager-worker protocol.  The chunk sink is serialized
 * by the manager's lock, so the callable itself need not be thread
 * safe.  The first worker exception cancels the run and is rethrown
 * here after all threads have joined.  Seeding output is flushed
 * through the same chunk path under job id 0.
 */
template <class R>
ManagerOutcome manager_loop(const PivotSystem<R>& sys, const ParallelParams& par,
                            const RowLift<R>& lift, const ChunkSink& chunkSink,
                            const RunLimits* userLimits = nullptr) {
    if (par.workers < 1 || par.lmin < 1 || par.maxc < 1 || par.scale < 1 || par.maxbufBytes < 1)
        throw std::invalid_argument("manager_loop: parameters must be positive");
    const auto t0 = std::chrono::steady_clock::now();

    std::mutex sinkMx;
    const ChunkSink lockedSink = [&](std::uint64_t jobId, std::vector<Vec<BigRat>>&& rows) {
        std::lock_guard<std::mutex> g(sinkMx);
        chunkSink(jobId, std::move(rows));
    };

    std::atomic<bool> stop{false};
    RunLimits workerLimits;
    workerLimits.stop = &stop;
    if (userLimits) {
        workerLimits.deadline = userLimits->deadline;
        if (userLimits->stop && userLimits->stop->load()) throw TimeoutError("run cancelled");
    }

    ManagerOutcome out;
    detail::ChunkBuffer seedBuf(0, lockedSink, par.maxbufBytes);
    const std::function<void(const Vec<R>&)> seedSink = [&](const Vec<R>& v) { seedBuf.push(lift(v)); };
    auto [seedRes, queue] = seed_jobs(sys, par, &seedSink, &workerLimits);
    seedBuf.flush();
    out.report.totalBases = seedRes.bases;
    out.report.totalOutputs = seedRes.outputCount;
    out.report.peakQueueLength = queue.size();
    out.maxDepthSeen = seedRes.maxDepthSeen;

    std::mutex mx;
    std::condition_variable cvJobs, cvDone;
    std::uint64_t nextJobId = queue.size() + 1;
    int inflight = 0;
    bool shutdown = queue.empty();
    std::exception_ptr firstError;

    auto workerMain = [&]() {
        for (;;) {
            Job job;
            {
                std::unique_lock<std::mutex> lk(mx);
                cvJobs.wait(lk, [&] { return shutdown || !queue.empty(); });
                if (shutdown) return;
                job = std::move(queue.front());
                queue.pop_front();
                job.budget = effective_budget(queue.size(), par);
                ++inflight;
                ++out.report.jobsDispatched;
            }
            try {
                WorkerResult wr = run_worker(job, sys, lift, lockedSink, par.maxbufBytes, &workerLimits);
                std::lock_guard<std::mutex> lk(mx);
                out.report.totalBases += wr.bases;
                out.report.totalOutputs += wr.outputCount;
                out.maxDepthSeen = std::max(out.maxDepthSeen, wr.maxDepthSeen);
                for (CobasisRecord& rec : wr.unexplored)
                    queue.push_back(Job{nextJobId++, std::move(rec), Budget{}});
                out.report.peakQueueLength = std::max(out.report.peakQueueLength, queue.size());
                --inflight;
                if (queue.empty() && inflight == 0) shutdown = true;
                if (shutdown) {
                    cvJobs.notify_all();
                    cvDone.notify_all();
                } else if (!queue.empty()) {
                    cvJobs.notify_all();
                }
            } catch (...) {
                std::lock_guard<std::mutex> lk(mx);
                if (!firstError) firstError = std::current_exception();
                stop.store(true);
                shutdown = true;
                --inflight;
                cvJobs.notify_all();
                cvDone.notify_all();
                return;
            }
        }
    };

    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(par.workers));
    if (!shutdown)
        for (int w = 0; w < par.workers; ++w) pool.emplace_back(workerMain);
    {
        std::unique_lock<std::mutex> lk(mx);
        cvDone.wait(lk, [&] { return shutdown && inflight == 0; });
    }
    for (std::thread& t : pool) t.join();
    if (firstError) std::rethrow_exception(firstError);

    out.report.wallSeconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return out;
}

} // namespace polyenum
