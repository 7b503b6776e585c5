"""Randomized dataset scaffolding for invariant tests.

Generates small mixed-type tables (with missing cells) as CSV bytes plus
the override lists needed to load them, and random filter stacks that are
guaranteed to split the rows into nonempty included and complement sides.
"""
import random

import reference
from filterlens import FilterStack, category_set, numeric_range
from filterlens.filters import included_mask


def random_table(rng: random.Random, min_rows=5, max_rows=200):
    n_rows = rng.randint(min_rows, max_rows)
    n_numeric = rng.randint(1, 3)
    n_categorical = rng.randint(1, 3)
    header = [f"num{i}" for i in range(n_numeric)] + [f"cat{i}" for i in range(n_categorical)]
    alphabet = ["a", "b", "c", "d", "e"]
    rows = []
    for _ in range(n_rows):
        row = {}
        for i in range(n_numeric):
            if rng.random() < 0.08:
                row[f"num{i}"] = None
            elif rng.random() < 0.3:
                row[f"num{i}"] = float(rng.randint(0, 8))
            else:
                row[f"num{i}"] = rng.uniform(-10, 10)
        for i in range(n_categorical):
            if rng.random() < 0.08:
                row[f"cat{i}"] = None
            else:
                row[f"cat{i}"] = rng.choice(alphabet[: 2 + i])
        rows.append(row)
    for name in header:
        if all(row[name] is None for row in rows):
            rows[0][name] = 1.0 if name.startswith("num") else "a"
    numeric = [name for name in header if name.startswith("num")]
    return header, rows, numeric


def random_stack(ds, rng: random.Random, max_constraints=2):
    """A stack with nonempty included set and nonempty complement, or None
    if none was found."""
    for _ in range(60):
        stack = FilterStack()
        names = list(ds.column_names)
        rng.shuffle(names)
        for name in names[: rng.randint(1, max_constraints)]:
            col = ds.column(name)
            if col.kind.is_categorical:
                k = rng.randint(1, max(1, len(col.categories) - 1))
                stack = stack.with_constraint(
                    category_set(name, rng.sample(list(col.categories), k)))
            else:
                values = sorted(v for v in col.numbers if v == v)
                a = rng.choice(values)
                b = rng.choice(values)
                lo, hi = min(a, b), max(a, b)
                if rng.random() < 0.2:
                    lo = None
                if rng.random() < 0.2:
                    hi = None
                stack = stack.with_constraint(numeric_range(name, lo, hi))
        mask = included_mask(ds, stack)
        if 0 < int(mask.sum()) < ds.n_rows:
            return stack
    return None


def table_to_csv(header, rows) -> bytes:
    return reference.rows_to_csv(header, rows)
