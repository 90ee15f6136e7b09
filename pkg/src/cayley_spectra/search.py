"""Exhaustive scans over symmetric subsets of a finite group.

A symmetric (identity-free, inverse-closed) subset is a union of cells,
where a cell is a single involution or an element paired with its
inverse.  Enumerating all 2^m cell unions by an m-bit counter gives a
deterministic scan order; conjugation by group elements permutes the
cells, so scans can optionally restrict to the counter-minimal subset
of each conjugacy orbit, which changes no group-level verdict.

Two group properties are scanned for:

  cayley_integral -- every symmetric subset has an integral spectrum;
  cis             -- every integral spectrum on a generating subset
                     forces the complement (plus identity) to be a
                     subgroup.

Scans stream in numpy chunks through the batched char-poly engine, can
run across several worker processes, and can checkpoint and resume.
"""

from __future__ import annotations

import json
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterator, List, Optional, Sequence, Tuple

import numpy as np

from . import catalog
from .cayley import SymmetricSubset
from .groups import FiniteGroup, is_perfect, is_subgroup
from .integrality import _factorial, engine_for

SCAN_ORDER_CAP = 32
_CHUNK = 2048
PROPERTIES = ("cayley_integral", "cis")


class ScanCapExceeded(ValueError):
    """Raised when an exhaustive scan is requested above the order cap."""


@dataclass(frozen=True)
class SubsetFamily:
    """The cell decomposition of one group's symmetric subsets."""

    group: FiniteGroup
    cells: Tuple[Tuple[int, ...], ...]

    @classmethod
    def of(cls, group: FiniteGroup) -> "SubsetFamily":
        seen = set()
        cells = []
        for x in group.elements():
            if x == group.identity or x in seen:
                continue
            xi = group.inv(x)
            cell = (x,) if xi == x else (x, xi)
            seen.update(cell)
            cells.append(cell)
        cells.sort(key=lambda c: c[0])
        return cls(group, tuple(cells))

    @property
    def cell_count(self) -> int:
        return len(self.cells)

    @property
    def subset_count(self) -> int:
        return 1 << len(self.cells)

    def cell_masks(self) -> Tuple[int, ...]:
        return tuple(sum(1 << x for x in cell) for cell in self.cells)

    def mask_of_counter(self, counter: int) -> int:
        mask = 0
        for i, cm in enumerate(self.cell_masks()):
            if counter >> i & 1:
                mask |= cm
        return mask

    def counter_of_mask(self, mask: int) -> int:
        counter = 0
        for i, cm in enumerate(self.cell_masks()):
            if mask & cm:
                if mask & cm != cm:
                    raise ValueError("mask is not a union of cells")
                counter |= 1 << i
        return counter

    def conjugation_cell_perms(self) -> Tuple[Tuple[int, ...], ...]:
        """Distinct permutations of the cell list induced by conjugation."""
        g = self.group
        index = {cell: i for i, cell in enumerate(self.cells)}
        perms = set()
        for a in g.elements():
            perm = tuple(
                index[tuple(sorted(g.conj(a, x) for x in cell))]
                for cell in self.cells
            )
            perms.add(perm)
        return tuple(sorted(perms))


def _canonical_keep(counters: np.ndarray, perms: Sequence[Tuple[int, ...]]) -> np.ndarray:
    """True where the counter is minimal in its conjugation orbit."""
    keep = np.ones(len(counters), dtype=bool)
    ident = tuple(range(len(perms[0]) if perms else 0))
    for p in perms:
        if p == ident:
            continue
        permuted = np.zeros_like(counters)
        for i, pi in enumerate(p):
            permuted |= ((counters >> i) & 1) << pi
        keep &= permuted >= counters
    return keep


def _masks_of_counters(counters: np.ndarray, cell_masks: Sequence[int]) -> np.ndarray:
    cu = counters.astype(np.uint64)
    masks = np.zeros(len(counters), dtype=np.uint64)
    one = np.uint64(1)
    for i, cm in enumerate(cell_masks):
        masks |= ((cu >> np.uint64(i)) & one) * np.uint64(cm)
    return masks


# ---------------------------------------------------------------------------
# scan results
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Witness:
    """One subset violating (or double-checking) a scanned property.

    kinds:
      nonintegral                     -- spectrum is not all-integer
      integral_noncomplement          -- integral + generating, yet the
                                         complement with identity is not
                                         a subgroup
      subgroup_complement_nonintegral -- guard that must never fire: the
                                         complement is a subgroup but
                                         the spectrum is not integral
    """

    kind: str
    counter: int
    bits: int
    subset_names: Tuple[str, ...]
    detail: dict

    def to_json_dict(self) -> dict:
        return {
            "kind": self.kind,
            "counter": self.counter,
            "bits": hex(self.bits),
            "subset": list(self.subset_names),
            "detail": self.detail,
        }


@dataclass
class ScanStats:
    """Tallies for one scan.

    The bound_* fields track the order-divisibility bound on every
    connected integral graph the scan visits: weak is
    |G| | 2(2|S|-1)!, strong is |G| | (2|S|-1)! and is only checked
    where it applies (G perfect, or S containing an odd-order element).
    """

    subsets_enumerated: int = 0
    reduced_count: int = 0
    integral_count: int = 0
    nonintegral_count: int = 0
    property_violations: int = 0
    bound_checked: int = 0
    bound_weak_violations: int = 0
    bound_strong_checked: int = 0
    bound_strong_violations: int = 0
    wall_time_ms: float = 0.0

    def absorb(self, other: "ScanStats") -> None:
        self.subsets_enumerated += other.subsets_enumerated
        self.reduced_count += other.reduced_count
        self.integral_count += other.integral_count
        self.nonintegral_count += other.nonintegral_count
        self.property_violations += other.property_violations
        self.bound_checked += other.bound_checked
        self.bound_weak_violations += other.bound_weak_violations
        self.bound_strong_checked += other.bound_strong_checked
        self.bound_strong_violations += other.bound_strong_violations

    def to_json_dict(self) -> dict:
        return {
            "subsets_enumerated": self.subsets_enumerated,
            "reduced_count": self.reduced_count,
            "integral_count": self.integral_count,
            "nonintegral_count": self.nonintegral_count,
            "property_violations": self.property_violations,
            "bound_checked": self.bound_checked,
            "bound_weak_violations": self.bound_weak_violations,
            "bound_strong_checked": self.bound_strong_checked,
            "bound_strong_violations": self.bound_strong_violations,
            "wall_time_ms": round(self.wall_time_ms, 3),
        }


@dataclass(frozen=True)
class GroupVerdict:
    """Outcome of scanning one property over one group's subsets."""

    group_label: str
    property_name: str
    holds: Optional[bool]
    exhausted: bool
    witnesses: Tuple[Witness, ...]
    stats: ScanStats

    def to_json_dict(self) -> dict:
        return {
            "group": self.group_label,
            "property": self.property_name,
            "holds": self.holds,
            "exhausted": self.exhausted,
            "witnesses": [w.to_json_dict() for w in self.witnesses],
            "stats": self.stats.to_json_dict(),
        }


# ---------------------------------------------------------------------------
# predicate cores
# ---------------------------------------------------------------------------


def _is_subgroup_mask(group: FiniteGroup, bits: int) -> bool:
    size = bits.bit_count()
    if size == 0 or group.order % size:
        return False
    return is_subgroup(group, bits)


def _scan_counters(
    group: FiniteGroup,
    family: SubsetFamily,
    property_name: str,
    start: int,
    end: int,
    reduce_orbits: bool,
    witness_limit: Optional[int],
) -> Tuple[ScanStats, List[Witness]]:
    """Scan one counter range in chunks; stop early at witness_limit.

    witness_limit None means tally-only: violations are counted but no
    witnesses are materialized and the scan never stops early.
    """
    engine = engine_for(group)
    perms = family.conjugation_cell_perms() if reduce_orbits else ()
    cell_masks = family.cell_masks()
    n_order = group.order
    full = (1 << n_order) - 1
    odd_mask = sum(
        1 << x
        for x in group.elements()
        if x != group.identity and group.element_order(x) % 2 == 1
    )
    perfect = is_perfect(group)
    stats = ScanStats()
    witnesses: List[Witness] = []
    collecting = witness_limit is not None
    cis = property_name == "cis"
    for cs in range(start, end, _CHUNK):
        ce = min(cs + _CHUNK, end)
        counters = np.arange(cs, ce, dtype=np.int64)
        stats.subsets_enumerated += len(counters)
        if reduce_orbits and len(perms) > 1:
            counters = counters[_canonical_keep(counters, perms)]
        if not len(counters):
            continue
        masks = _masks_of_counters(counters, cell_masks)
        mask_list = [int(m) for m in masks]
        results = engine.split_results(mask_list)
        stats.reduced_count += len(results)
        for counter, mask, (k, roots, rest) in zip(counters, mask_list, results):
            integral = rest.degree == 0
            if integral:
                stats.integral_count += 1
                if roots.get(k, 0) == 1:  # connected
                    stats.bound_checked += 1
                    base = _factorial(2 * k - 1) if k >= 1 else 1
                    if (2 * base) % n_order:
                        stats.bound_weak_violations += 1
                    if perfect or mask & odd_mask:
                        stats.bound_strong_checked += 1
                        if base % n_order:
                            stats.bound_strong_violations += 1
            else:
                stats.nonintegral_count += 1
            kind = None
            if cis:
                comp = full & ~mask  # subset is identity-free, so this keeps the identity
                comp_subgroup = _is_subgroup_mask(group, comp)
                if integral:
                    if roots.get(k, 0) == 1 and not comp_subgroup:
                        kind = "integral_noncomplement"
                        detail = {
                            "spectrum": {
                                str(r): m
                                for r, m in sorted(roots.items(), reverse=True)
                            },
                            "complement_with_identity": _names(group, comp),
                        }
                elif comp_subgroup:
                    kind = "subgroup_complement_nonintegral"
                    detail = {"remainder_degree": rest.degree}
            elif not integral:
                kind = "nonintegral"
                detail = {"remainder_degree": rest.degree}
            if kind is None:
                continue
            stats.property_violations += 1
            if not collecting:
                continue
            if kind == "nonintegral":
                detail["float_evidence"] = [
                    round(v, 9) for v in engine._float_evidence(mask)
                ]
            witnesses.append(_witness(group, kind, int(counter), mask, detail))
            if len(witnesses) >= witness_limit:
                return stats, witnesses
    return stats, witnesses


def _witness(
    group: FiniteGroup, kind: str, counter: int, bits: int, detail: dict
) -> Witness:
    return Witness(
        kind=kind,
        counter=counter,
        bits=bits,
        subset_names=tuple(_names(group, bits)),
        detail=detail,
    )


def _names(group: FiniteGroup, bits: int) -> List[str]:
    return [group.name_of(x) for x in range(group.order) if bits >> x & 1]


def _scan_task(args: tuple) -> tuple:
    """Worker-process entry: rebuilds the group, scans one range."""
    label, property_name, start, end, reduce_orbits, witness_limit = args
    group = catalog.build_cached(label)
    family = SubsetFamily.of(group)
    stats, witnesses = _scan_counters(
        group, family, property_name, start, end, reduce_orbits, witness_limit
    )
    return (
        stats,
        [(w.kind, w.counter, w.bits, w.subset_names, w.detail) for w in witnesses],
    )


# ---------------------------------------------------------------------------
# checkpoints
# ---------------------------------------------------------------------------


def _checkpoint_payload(
    group: FiniteGroup,
    family: SubsetFamily,
    property_name: str,
    reduce_orbits: bool,
    next_counter: int,
    stats: ScanStats,
    witnesses: Sequence[Witness],
) -> dict:
    return {
        "schema": 1,
        "group_expr": group.label,
        "property": property_name,
        "reduce": reduce_orbits,
        "cells": [list(c) for c in family.cells],
        "subset_count": family.subset_count,
        "next_counter": next_counter,
        "stats": stats.to_json_dict(),
        "witnesses": [w.to_json_dict() for w in witnesses],
    }


def _write_checkpoint(path: str, payload: dict) -> None:
    tmp = path + ".tmp"
    with open(tmp, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, indent=1)
        fh.write("\n")
    os.replace(tmp, path)


def _load_checkpoint(
    path: str,
    group: FiniteGroup,
    family: SubsetFamily,
    property_name: str,
    reduce_orbits: bool,
) -> Optional[dict]:
    if not os.path.exists(path):
        return None
    with open(path, "r", encoding="utf-8") as fh:
        data = json.load(fh)
    matches = (
        data.get("schema") == 1
        and data.get("group_expr") == group.label
        and data.get("property") == property_name
        and data.get("reduce") == reduce_orbits
        and data.get("cells") == [list(c) for c in family.cells]
    )
    if not matches:
        raise ValueError(f"checkpoint {path!r} does not match this scan")
    return data


def _stats_from_json(d: dict) -> ScanStats:
    return ScanStats(
        subsets_enumerated=d.get("subsets_enumerated", 0),
        reduced_count=d.get("reduced_count", 0),
        integral_count=d.get("integral_count", 0),
        nonintegral_count=d.get("nonintegral_count", 0),
        property_violations=d.get("property_violations", 0),
        bound_checked=d.get("bound_checked", 0),
        bound_weak_violations=d.get("bound_weak_violations", 0),
        bound_strong_checked=d.get("bound_strong_checked", 0),
        bound_strong_violations=d.get("bound_strong_violations", 0),
        wall_time_ms=d.get("wall_time_ms", 0.0),
    )


def _witness_from_json(d: dict) -> Witness:
    return Witness(
        kind=d["kind"],
        counter=d["counter"],
        bits=int(d["bits"], 16),
        subset_names=tuple(d["subset"]),
        detail=d["detail"],
    )


# ---------------------------------------------------------------------------
# the scan driver
# ---------------------------------------------------------------------------


def exhaustive_scan(
    group: FiniteGroup,
    property_name: str,
    *,
    reduce_orbits: bool = True,
    workers: int = 1,
    force: bool = False,
    checkpoint: Optional[str] = None,
    witness_limit: Optional[int] = 1,
    max_counters: Optional[int] = None,
) -> GroupVerdict:
    """Scan every symmetric subset of the group for one property.

    Stops after witness_limit violations; witness_limit None scans the
    whole range counting violations without materializing witnesses,
    which keeps every stats field independent of the worker count.
    max_counters bounds how many counters this call processes (the scan
    is left resumable through its checkpoint); a scan cut short that
    way has holds=None unless a violation already settled it.
    """
    if property_name not in PROPERTIES:
        raise ValueError(f"unknown scan property {property_name!r}")
    if group.order > SCAN_ORDER_CAP and not force:
        raise ScanCapExceeded(
            f"group order {group.order} exceeds the exhaustive-scan cap "
            f"{SCAN_ORDER_CAP}; pass force to scan anyway"
        )
    family = SubsetFamily.of(group)
    total = family.subset_count
    stats = ScanStats()
    witnesses: List[Witness] = []
    start = 0
    if checkpoint:
        data = _load_checkpoint(checkpoint, group, family, property_name, reduce_orbits)
        if data is not None:
            start = data["next_counter"]
            stats = _stats_from_json(data["stats"])
            witnesses = [_witness_from_json(w) for w in data["witnesses"]]
    end = total if max_counters is None else min(total, start + max_counters)
    t0 = time.monotonic()
    wall_base = stats.wall_time_ms
    next_counter = start

    def note_progress() -> None:
        if checkpoint:
            _write_checkpoint(
                checkpoint,
                _checkpoint_payload(
                    group, family, property_name, reduce_orbits,
                    next_counter, stats, witnesses,
                ),
            )

    limit_hit = witness_limit is not None and len(witnesses) >= witness_limit
    if workers > 1 and start < end and not limit_hit:
        try:
            rebuilt = catalog.build_cached(group.label)
        except Exception:
            rebuilt = None
        if rebuilt is None or rebuilt.table != group.table:
            workers = 1  # not reconstructible from its label in a worker
    if workers > 1 and start < end and not limit_hit:
        task_size = max(_CHUNK, ((end - start) // (workers * 8)) // _CHUNK * _CHUNK)
        spans = [
            (s, min(s + task_size, end)) for s in range(start, end, task_size)
        ]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futures = [
                pool.submit(
                    _scan_task,
                    (group.label, property_name, s, e, reduce_orbits, witness_limit),
                )
                for s, e in spans
            ]
            for (s, e), fut in zip(spans, futures):
                part_stats, part_wits = fut.result()
                stats.absorb(part_stats)
                for kind, counter, bits, names, detail in part_wits:
                    witnesses.append(Witness(kind, counter, bits, tuple(names), detail))
                next_counter = (
                    s + part_stats.subsets_enumerated
                )  # tasks stop early only on witnesses
                stats.wall_time_ms = wall_base + (time.monotonic() - t0) * 1000.0
                note_progress()
                if witness_limit is not None and len(witnesses) >= witness_limit:
                    for f in futures:
                        f.cancel()
                    break
            else:
                next_counter = end
    elif start < end and not limit_hit:
        span = _CHUNK * 8
        for s in range(start, end, span):
            e = min(s + span, end)
            part_stats, part_wits = _scan_counters(
                group, family, property_name, s, e, reduce_orbits,
                None if witness_limit is None else witness_limit - len(witnesses),
            )
            stats.absorb(part_stats)
            witnesses.extend(part_wits)
            next_counter = s + part_stats.subsets_enumerated
            stats.wall_time_ms = wall_base + (time.monotonic() - t0) * 1000.0
            note_progress()
            if witness_limit is not None and len(witnesses) >= witness_limit:
                break
        else:
            next_counter = end

    stats.wall_time_ms = wall_base + (time.monotonic() - t0) * 1000.0
    if witness_limit is not None:
        witnesses = witnesses[:witness_limit]
    if stats.property_violations or witnesses:
        holds: Optional[bool] = False
    elif next_counter >= total:
        holds = True
    else:
        holds = None
    next_counter = min(next_counter, total)
    note_progress()
    return GroupVerdict(
        group_label=group.label,
        property_name=property_name,
        holds=holds,
        exhausted=next_counter >= total,
        witnesses=tuple(witnesses),
        stats=stats,
    )


def is_cayley_integral(group: FiniteGroup, **kwargs) -> GroupVerdict:
    """Does every symmetric subset of the group have integral spectrum?

    Disconnected graphs are unions of translates of the subgroup-level
    graph, so scanning all subsets rather than generating ones only is
    equivalent and also covers every subgroup.
    """
    return exhaustive_scan(group, "cayley_integral", **kwargs)


def is_cis(group: FiniteGroup, **kwargs) -> GroupVerdict:
    """Are integral generating subsets exactly the subgroup complements?

    Complements of proper subgroups always give connected, complete
    multipartite, integral graphs, so only the forward direction can
    fail; the scan still guards the converse on every subset it visits.
    """
    return exhaustive_scan(group, "cis", **kwargs)


WITNESS_KINDS = ("nonintegral", "integral_noncomplement")


def symmetric_subsets(
    group: FiniteGroup, reduce_conjugacy: bool = False
) -> Iterator[SymmetricSubset]:
    """Stream every symmetric subset of the group in counter order.

    With reduce_conjugacy, only the counter-minimal representative of
    each conjugation orbit is yielded.
    """
    family = SubsetFamily.of(group)
    perms = family.conjugation_cell_perms() if reduce_conjugacy else ()
    cell_masks = family.cell_masks()
    total = family.subset_count
    for cs in range(0, total, _CHUNK):
        counters = np.arange(cs, min(cs + _CHUNK, total), dtype=np.int64)
        if reduce_conjugacy and len(perms) > 1:
            counters = counters[_canonical_keep(counters, perms)]
        if not len(counters):
            continue
        for m in _masks_of_counters(counters, cell_masks):
            yield SymmetricSubset(group, int(m))


def find_witness(
    group: FiniteGroup, kind: str, *, force: bool = False
) -> Optional[SymmetricSubset]:
    """Least symmetric subset of the given witness kind, in counter order.

    nonintegral: the spectrum has a non-integer eigenvalue.
    integral_noncomplement: integral and generating, yet the complement
    together with the identity is not a subgroup.

    The enumeration is unreduced, so the returned subset is the
    counter-least witness overall.  None means no subset qualifies.
    """
    if kind not in WITNESS_KINDS:
        raise ValueError(f"unknown witness kind {kind!r}")
    if group.order > SCAN_ORDER_CAP and not force:
        raise ScanCapExceeded(
            f"group order {group.order} exceeds the exhaustive-scan cap "
            f"{SCAN_ORDER_CAP}; pass force to scan anyway"
        )
    family = SubsetFamily.of(group)
    engine = engine_for(group)
    cell_masks = family.cell_masks()
    full = (1 << group.order) - 1
    total = family.subset_count
    for cs in range(0, total, _CHUNK):
        counters = np.arange(cs, min(cs + _CHUNK, total), dtype=np.int64)
        masks = _masks_of_counters(counters, cell_masks)
        mask_list = [int(m) for m in masks]
        for mask, (k, roots, rest) in zip(mask_list, engine.split_results(mask_list)):
            integral = rest.degree == 0
            if kind == "nonintegral":
                if not integral:
                    return SymmetricSubset(group, mask)
            elif (
                integral
                and roots.get(k, 0) == 1
                and not _is_subgroup_mask(group, full & ~mask)
            ):
                return SymmetricSubset(group, mask)
    return None
