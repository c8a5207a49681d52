"""Regenerates the synthetic project fixture and its golden files.

Usage: python3 generate.py   (run from this directory)

The golden values are computed here, independently of the Rust code:
fault classification by walking each test's own verdict sequence, and
original-order APFD by re-deriving failure-weight clusters.
"""

import json
import random
import shutil
from datetime import datetime, timedelta, timezone
from pathlib import Path

HERE = Path(__file__).resolve().parent
PKG = "org/shop"
NAMES = [
    "AccountTest", "BillingTest", "CartTest", "CatalogTest", "CheckoutTest",
    "InventoryTest", "LoginTest", "OrderTest", "PaymentTest", "SearchTest",
    "ShippingTest", "UserTest",
]
TESTS = [f"{PKG}/{n}.java" for n in NAMES]
T = dict(zip(NAMES, TESTS))

BUILD_IDS = [b for b in range(1, 44) if b not in (7, 19, 31)]
NO_OUTPUT = {12, 25}
USER_INTRODUCED = 10
SHIPPING_REMOVED_AFTER = 35

FAILURES = {
    3: ["OrderTest"],
    5: ["PaymentTest"],
    9: ["PaymentTest"],
    10: ["UserTest"],
    11: ["LoginTest"],
    13: ["LoginTest"],
    14: ["CartTest"],
    15: ["CartTest"],
    20: ["InventoryTest"],
    21: ["InventoryTest"],
    22: ["InventoryTest", "BillingTest", "CatalogTest"],
    23: ["InventoryTest"],
    27: ["CheckoutTest"],
    30: ["SearchTest"],
    33: ["CatalogTest", "AccountTest"],
    34: ["CatalogTest"],
    38: ["LoginTest"],
    40: ["OrderTest"],
    42: ["SearchTest", "PaymentTest"],
}

# Builds at which a test's source changes (new snapshot content).
EDITS = {
    "CartTest": [14, 30],
    "InventoryTest": [20, 22],
    "LoginTest": [13],
    "SearchTest": [30, 42],
    "PaymentTest": [9],
}

# Tests sharing a fixture family share most of their source.
FAMILY = {
    "CartTest": "checkout", "CheckoutTest": "checkout", "PaymentTest": "checkout",
    "BillingTest": "checkout", "CatalogTest": "catalog", "SearchTest": "catalog",
    "InventoryTest": "catalog", "AccountTest": "user", "LoginTest": "user",
    "UserTest": "user", "OrderTest": "order", "ShippingTest": "order",
}

WEIGHTS = [0.9, 0.8, 0.7, 0.6, 0.5, 0.4, 0.3, 0.2]


def weight(n):
    return WEIGHTS[n - 1] if n <= 8 else 0.1


def executed(build_id):
    if build_id in NO_OUTPUT:
        return []
    order = [n for n in NAMES if n != "UserTest" or build_id >= USER_INTRODUCED]
    if build_id > SHIPPING_REMOVED_AFTER:
        order.remove("ShippingTest")
    # Rotate the execution order a little so it is not always alphabetical.
    k = build_id % 5
    return order[k:] + order[:k]


def version(name, build_id):
    return sum(1 for b in EDITS.get(name, []) if b <= build_id)


def source(name, build_id):
    rng = random.Random(f"{name}/{version(name, build_id)}")
    family = FAMILY[name]
    frng = random.Random(f"family/{family}")
    shared = [
        f"    private final {family.title()}Fixture fixture = new {family.title()}Fixture({frng.randint(1, 99)});",
        *(f"    // {family} step {i}: {' '.join(frng.choice(['setup', 'verify', 'mock', 'stub', 'assert', 'load', 'reset']) for _ in range(8))}"
          for i in range(frng.randint(8, 16))),
    ]
    own = []
    for i in range(rng.randint(2, 6)):
        calls = "\n".join(
            f"        assertEquals({rng.randint(0, 999)}, fixture.{rng.choice(['get', 'put', 'find', 'count', 'sum'])}{rng.randint(0, 50)}());"
            for _ in range(rng.randint(2, 6))
        )
        own.append(f"    @Test\n    public void case{i}() {{\n{calls}\n    }}")
    body = "\n".join(shared) + "\n\n" + "\n\n".join(own)
    return f"package org.shop;\n\nimport static org.junit.Assert.*;\n\npublic class {name} {{\n{body}\n}}\n"


def history_rows():
    start = datetime(2024, 3, 1, 8, 0, tzinfo=timezone.utc)
    rows = []
    for i, b in enumerate(BUILD_IDS):
        tests = [{"id": T[n], "verdict": "fail" if n in FAILURES.get(b, []) else "pass"} for n in executed(b)]
        changed = sorted(T[n] for n, bs in EDITS.items() if b in bs)
        row = {
            "build_id": b,
            "commit": f"{b * 2654435761 % 2**32:08x}",
            "timestamp": (start + timedelta(hours=3 * i)).strftime("%Y-%m-%dT%H:%M:%SZ"),
            "changed_files": changed + [f"src/main/java/org/shop/Module{b % 4}.java"],
        }
        if tests:
            row["tests"] = tests
        rows.append(row)
    return rows


def classify(rows):
    """T1/T2 with gaps counted in each test's own verdicts."""
    count, last_fail = {}, {}
    records = []
    for row in rows:
        for t in row.get("tests", []):
            tid = t["id"]
            idx = count.get(tid, 0)
            count[tid] = idx + 1
            if t["verdict"] != "fail":
                continue
            if tid in last_fail:
                records.append({"build_id": row["build_id"], "test": tid, "class": "T1", "gap": idx - last_fail[tid]})
            else:
                records.append({"build_id": row["build_id"], "test": tid, "class": "T2", "gap": idx})
            last_fail[tid] = idx
    return records, len(count)


def quantile(sorted_vals, p):
    h = (len(sorted_vals) - 1) * p
    lo = int(h)
    hi = min(lo + 1, len(sorted_vals) - 1)
    return sorted_vals[lo] + (h - lo) * (sorted_vals[hi] - sorted_vals[lo])


def five(vals):
    if not vals:
        return None
    s = sorted(vals)
    return {"min": s[0], "p25": quantile(s, 0.25), "median": quantile(s, 0.5), "p75": quantile(s, 0.75), "max": s[-1]}


def orig_apfd(rows, interval):
    out = []
    for i, row in enumerate(rows):
        tests = row.get("tests", [])
        failing = [t["id"] for t in tests if t["verdict"] == "fail"]
        if not failing:
            continue
        prior = [r for r in rows[:i] if r.get("tests")][::-1][:interval]
        prio = {}
        for dist, r in enumerate(prior, start=1):
            for t in r["tests"]:
                if t["verdict"] == "fail":
                    prio[t["id"]] = prio.get(t["id"], 0.0) + weight(dist)
        ids = [t["id"] for t in tests]
        order = sorted(ids, key=lambda t: (-round(prio.get(t, 0.0) * 1e6), ids.index(t)))
        n, m = len(order), len(failing)
        tf = sum(order.index(f) + 1 for f in failing)
        out.append({"build_id": row["build_id"], "apfd": 100.0 * (1 - tf / (n * m) + 1 / (2 * n)), "order": order})
    return out


def main():
    rows = history_rows()
    with open(HERE / "synthetic-project.jsonl", "w") as f:
        for r in rows:
            f.write(json.dumps(r, separators=(",", ":")) + "\n")

    snaps = HERE / "snapshots"
    shutil.rmtree(snaps, ignore_errors=True)
    for r in rows:
        if not any(t["verdict"] == "fail" for t in r.get("tests", [])):
            continue
        for t in r["tests"]:
            name = Path(t["id"]).stem
            p = snaps / str(r["build_id"]) / t["id"]
            p.parent.mkdir(parents=True, exist_ok=True)
            p.write_text(source(name, r["build_id"]))

    records, n_tests = classify(rows)
    t1 = [r["gap"] for r in records if r["class"] == "T1"]
    t2 = [r["gap"] for r in records if r["class"] == "T2"]
    golden = HERE / "golden"
    golden.mkdir(exist_ok=True)
    summary = {
        "tests": n_tests,
        "fault_revealing_tests": len({r["test"] for r in records}),
        "faults": len(records),
        "t1_faults": len(t1),
        "t2_faults": len(t2),
        "t1_gaps": five(t1),
        "t2_gaps": five(t2),
    }
    (golden / "classification.json").write_text(json.dumps({"records": records, "summary": summary}, indent=2) + "\n")
    apfd = {str(v): orig_apfd(rows, v) for v in (0, 1, 10)}
    (golden / "orig_apfd.json").write_text(json.dumps(apfd, indent=2) + "\n")


if __name__ == "__main__":
    main()
