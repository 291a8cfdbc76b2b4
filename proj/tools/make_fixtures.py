#!/usr/bin/env python3
"""Regenerates the bundled fixtures under data/fixtures.

The snippet corpus for "Abdullah Mohd Zin" is synthesized so that the
normalized tf.idf weights of its candidate words hit chosen targets, and the
hit-count cache is synthesized so that the Jaccard word graph has a known
maximum spanning tree whose degree-2 separation yields eight word clusters.
Everything is seeded; running the script twice produces identical files.

    python3 tools/make_fixtures.py [--out data/fixtures] [--check]
"""

import argparse
import json
import math
import random
from pathlib import Path

ACTOR = "abdullah mohd zin"
N_SNIPPETS = 500
SNIPPET_LEN = 50

# Target v for every candidate word, in descending order.
TARGET_V = [
    ("network", 1.0),
    ("minister", 0.93),
    ("malaysia", 0.86),
    ("journal", 0.80),
    ("datuk", 0.74),
    ("department", 0.68),
    ("allah", 0.62),
    ("international", 0.57339),
    ("ismail", 0.5705),
    ("nazri", 0.5680),
    ("computer", 0.56474),
    ("prime", 0.555),
    ("ictac", 0.545),
    ("learning", 0.535),
    ("system", 0.52506),
    ("software", 0.50420),
    ("foxley", 0.49),
    ("said", 0.475),
    ("kebangsaan", 0.46),
    ("performance", 0.445),
    ("dr", 0.43),
    ("university", 0.42),
    ("eric", 0.41),
    ("use", 0.40142),
    ("accuracy", 0.39),
    ("dblp", 0.375),
    ("based", 0.36),
    ("communications", 0.345),
    ("utilization", 0.33),
    ("author", 0.318),
]
# Above the 0.3 threshold but beyond the 30-word cap.
OVERFLOW_V = [("lecture", 0.312), ("bangi", 0.308), ("selangor", 0.305)]
# Below the threshold.
NOISE_V = [("page", 0.29), ("home", 0.2), ("news", 0.15), ("profile", 0.1),
           ("contact", 0.05), ("view", 0.03)]
FILLER = "the"  # occurs in every snippet, so its idf is 0

# Clusters as word paths; consecutive words are joined by strong edges.
CLUSTERS = [
    ["network", "international", "computer", "system", "software", "use"],
    ["malaysia", "accuracy"],
    ["datuk", "nazri", "kebangsaan"],
    ["minister", "journal", "ictac", "dblp", "communications", "utilization"],
    ["department", "learning", "said", "performance"],
    ["dr", "university", "based"],
    ["prime", "foxley", "eric", "author"],
    ["allah", "ismail"],
]
# Weaker edges completing the spanning tree; the second word is an interior
# node of another cluster, so separation cuts exactly these edges.
BRIDGES = [
    ("accuracy", "international"),
    ("datuk", "computer"),
    ("minister", "system"),
    ("department", "journal"),
    ("dr", "ictac"),
    ("prime", "learning"),
    ("allah", "university"),
]

SINGLETONS = {
    "network": 653_600,
    "international": 989_700,
    "computer": 976_280,
    "system": 1_051_540,
    "software": 1_360_820,
    "use": 2_000_000,
    "minister": 1_200_000,
    "malaysia": 1_800_000,
    "journal": 1_500_000,
    "datuk": 450_000,
    "department": 1_700_000,
    "allah": 1_900_000,
    "ismail": 700_000,
    "nazri": 420_000,
    "prime": 1_100_000,
    "ictac": 250_000,
    "learning": 1_600_000,
    "foxley": 300_000,
    "said": 2_400_000,
    "kebangsaan": 350_000,
    "performance": 1_300_000,
    "dr": 1_900_000,
    "university": 2_200_000,
    "eric": 1_000_000,
    "accuracy": 800_000,
    "dblp": 600_000,
    "based": 2_100_000,
    "communications": 1_400_000,
    "utilization": 900_000,
    "author": 1_250_000,
}
ACTOR_HITS = 15_000

SK_ACADEMIC = ["sciences", "faculty", "associate", "economic", "prof",
               "environment", "career", "journal", "network", "university",
               "report", "relationship", "context"]


def solve_counts(targets, top_df=150, top_count=1000):
    """Chooses (occurrences, document frequency) per word so that
    count * ln(N / df) / top matches v * top."""
    top = top_count * math.log(N_SNIPPETS / top_df)
    out = {}
    for word, v in targets:
        if v == 1.0:
            out[word] = (top_count, top_df)
            continue
        goal = v * top
        best = None
        for df in range(1, 300):
            idf = math.log(N_SNIPPETS / df)
            c = round(goal / idf)
            for cc in (c - 1, c, c + 1):
                if cc < df or cc > 8 * df:
                    continue
                err = abs(cc * idf - goal)
                if best is None or err < best[0]:
                    best = (err, cc, df)
        out[word] = (best[1], best[2])
    return out


def build_snippets(counts, rng):
    slots = SNIPPET_LEN - 3
    bags = [[] for _ in range(N_SNIPPETS)]
    for word, (count, df) in sorted(counts.items(), key=lambda kv: -kv[1][0]):
        # Spread over the df least loaded snippets.
        order = sorted(range(N_SNIPPETS), key=lambda i: (len(bags[i]), rng.random()))
        chosen = order[:df]
        for idx in chosen:
            bags[idx].append(word)
        for _ in range(count - df):
            idx = min(chosen, key=lambda i: len(bags[i]))
            bags[idx].append(word)
    records = []
    for i, bag in enumerate(bags):
        if len(bag) > slots - 1:
            raise SystemExit(f"snippet {i} overfull: {len(bag)}")
        words = bag + [FILLER] * (slots - len(bag))
        rng.shuffle(words)
        text = "Abdullah Mohd Zin " + " ".join(words)
        if i % 7 == 0:
            text = text.replace(" the ", " (2011) the ", 1)
        if i % 5 == 0:
            text = text.replace(" the ", ", the ", 1)
        records.append({"actor": ACTOR, "rank": i + 1, "text": text})
    return records


def pair_key(a, b):
    a, b = sorted((a, b))
    return f'"{a}" AND "{b}"'


def doubleton_for(j, hx, hy):
    return round(j * (hx + hy) / (1 + j))


def build_hits(rng):
    hits = {f'"{w}"': n for w, n in SINGLETONS.items()}
    hits[f'"{ACTOR}"'] = ACTOR_HITS
    tree = {}
    for path in CLUSTERS:
        for a, b in zip(path, path[1:]):
            cap = 0.8 * min(SINGLETONS[a], SINGLETONS[b]) / max(SINGLETONS[a], SINGLETONS[b])
            tree[tuple(sorted((a, b)))] = min(rng.uniform(0.10, 0.30), cap)
    for a, b in BRIDGES:
        tree[tuple(sorted((a, b)))] = rng.uniform(0.03, 0.06)
    words = sorted(SINGLETONS)
    for i, a in enumerate(words):
        for b in words[i + 1:]:
            j = tree.get((a, b), rng.uniform(0.001, 0.02))
            hits[pair_key(a, b)] = doubleton_for(j, SINGLETONS[a], SINGLETONS[b])
    for w, v in TARGET_V:
        hits[pair_key(ACTOR, w)] = round(ACTOR_HITS * v * rng.uniform(0.05, 0.6))
    return dict(sorted(hits.items()))


def judgments_outcomes(rng):
    rows = []
    plan = ["no-cluster"] * 8 + ["single-cluster"] * 13 + ["multi-keyword"] * 122
    for k, outcome in enumerate(plan):
        relevant = [f"https://example.org/a{k:03d}/p{i}" for i in range(rng.randint(5, 20))]
        if outcome == "no-cluster":
            retrieved = []
        else:
            hit = rng.randint(0, len(relevant))
            retrieved = relevant[:hit] + [f"https://example.net/a{k:03d}/x{i}"
                                          for i in range(rng.randint(1, 15))]
        rows.append({"actor": f"actor-{k + 1:03d}", "relevant": relevant,
                     "retrieved": retrieved, "outcome": outcome})
    return rows


def judgments_averages():
    relevant = [f"page-{i:03d}" for i in range(129)]
    retrieved = relevant[:59] + [f"other-{i:03d}" for i in range(141)]
    return [{"actor": "abdullah mohd zin", "relevant": relevant, "retrieved": retrieved}]


def check(records, hits, counts):
    """Independent recomputation of v and of the cluster partition."""
    docs = [r["text"].lower().replace(",", " ").replace("(", " ").replace(")", " ").split()
            for r in records]
    docs = [[t for t in d if not t.isdigit()] for d in docs]
    assert all(len(d) == SNIPPET_LEN for d in docs)
    name = set(ACTOR.split())
    tf, df = {}, {}
    for d in docs:
        for w in set(d):
            if w in name:
                continue
            tf[w] = tf.get(w, 0.0) + d.count(w) / len(d)
            df[w] = df.get(w, 0) + 1
    tfidf = {w: tf[w] * math.log(len(docs) / df[w]) for w in tf}
    hs = max(tfidf.values())
    v = {w: x / hs for w, x in tfidf.items()}
    for w, target in TARGET_V + OVERFLOW_V:
        assert abs(v[w] - target) < 2e-5, (w, v[w], target)
    for w, _ in NOISE_V:
        assert v[w] < 0.3, (w, v[w])
    ranked = sorted((w for w in v if v[w] > 0.3), key=lambda w: (-v[w], w))[:30]
    assert ranked == [w for w, _ in TARGET_V], ranked

    words = sorted(SINGLETONS)
    def jac(a, b):
        x, y, xy = hits[f'"{a}"'], hits[f'"{b}"'], hits[pair_key(a, b)]
        return xy / (x + y - xy) if xy else 0.0
    edges = sorted(((jac(a, b), a, b) for i, a in enumerate(words) for b in words[i + 1:]),
                   key=lambda e: (-e[0], e[1], e[2]))
    parent = {w: w for w in words}
    def find(w):
        while parent[w] != w:
            w = parent[w]
        return w
    kept = []
    for wgt, a, b in edges:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb
            kept.append((wgt, a, b))
    adj = {w: [] for w in words}
    for e in kept:
        adj[e[1]].append(e)
        adj[e[2]].append(e)
    while True:
        hubs = [w for w in words if len(adj[w]) > 2]
        if not hubs:
            break
        h = sorted(hubs, key=lambda w: (-len(adj[w]), w))[0]
        ordered = sorted(adj[h], key=lambda e: (-e[0], e[1] if e[2] == h else e[2]))
        for e in ordered[2:]:
            adj[e[1]].remove(e)
            adj[e[2]].remove(e)
    seen, groups = set(), []
    for w in words:
        if w in seen:
            continue
        stack, comp = [w], set()
        while stack:
            x = stack.pop()
            if x in comp:
                continue
            comp.add(x)
            for e in adj[x]:
                stack.append(e[2] if e[1] == x else e[1])
        seen |= comp
        groups.append(frozenset(comp))
    assert set(groups) == {frozenset(c) for c in CLUSTERS}, groups
    print("fixture check passed:", len(groups), "clusters")


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--out", default=str(Path(__file__).resolve().parent.parent / "data" / "fixtures"))
    ap.add_argument("--check", action="store_true")
    args = ap.parse_args()
    out = Path(args.out)
    (out / "sk").mkdir(parents=True, exist_ok=True)
    (out / "judgments").mkdir(parents=True, exist_ok=True)

    rng = random.Random(20110901)
    counts = solve_counts(TARGET_V + OVERFLOW_V + NOISE_V)
    records = build_snippets(counts, rng)
    uniform = "Test Actor Uniform appears in this uniform snippet"
    records += [{"actor": "test actor uniform", "rank": r, "text": uniform} for r in (1, 2, 3)]
    hits = build_hits(rng)

    with open(out / "snippets.jsonl", "w") as f:
        for r in records:
            f.write(json.dumps(r) + "\n")
    with open(out / "hits.json", "w") as f:
        json.dump(hits, f, indent=1)
        f.write("\n")
    actors = [
        {"canonical_name": "Abdullah Mohd Zin",
         "variant_labels": ["Abdullah M. Zin", "A. M. Zin"],
         "ambiguous_labels": ["Abdullah Zin"],
         "category_hint": "academic"},
        {"canonical_name": "Abdullah Mohd Zin (politician)",
         "variant_labels": [],
         "ambiguous_labels": ["Abdullah Zin"],
         "category_hint": "politician"},
        {"canonical_name": "Test Actor Uniform",
         "variant_labels": [], "ambiguous_labels": [], "category_hint": None},
    ]
    with open(out / "actors.json", "w") as f:
        json.dump(actors, f, indent=1)
        f.write("\n")
    with open(out / "sk" / "academic.txt", "w") as f:
        f.write("# Stable attribute: academic. Partial list.\n")
        for w in SK_ACADEMIC:
            f.write(w + "\n")
    with open(out / "judgments" / "outcomes143.jsonl", "w") as f:
        for r in judgments_outcomes(rng):
            f.write(json.dumps(r) + "\n")
    with open(out / "judgments" / "averages.jsonl", "w") as f:
        for r in judgments_averages():
            f.write(json.dumps(r) + "\n")
    if args.check:
        check([r for r in records if r["actor"] == ACTOR], hits, counts)


if __name__ == "__main__":
    main()
