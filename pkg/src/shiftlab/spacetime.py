"""The Z^2 space-time array of an automorphism acting on a point.

Row j of the array is the j-th iterate of the code applied to the base
point, and entry (i, j) is that iterate's letter at coordinate i, which
equals coordinate 0 of (code^j shift^i)(x).  All verdicts drawn from a
finite window are window-level evidence, not claims about the infinite
array.
"""

from dataclasses import dataclass

from .autos import apply_to_config


@dataclass(frozen=True)
class SpaceTimeWindow:
    base: object          # Configuration, row 0 when row0 == 0
    code: object          # the BlockCode generating the rows
    rows: tuple           # Configurations, row j = code^(row0+j) of base
    width: int
    height: int
    col0: int             # leftmost column coordinate
    row0: int             # smallest iterate index
    grid: tuple           # grid[j][i] = letter at (col0+i, row0+j)

    def entry(self, i, j):
        """Letter at array coordinate (i, j), absolute."""
        return self.grid[j - self.row0][i - self.col0]


def spacetime_window(spec, cert, config, width, height, row0=0, col0=None):
    """Materialize a width x height window of the space-time array.

    Negative iterate indices use the certificate's inverse code.
    """
    if width < 1 or height < 1:
        raise ValueError("width and height must be >= 1")
    if not spec.contains_config(config):
        raise ValueError("base configuration not in the subshift")
    if col0 is None:
        col0 = -(width // 2)
    base = config
    for _ in range(-row0 if row0 < 0 else 0):
        base = apply_to_config(cert.inverse, base)
    for _ in range(row0 if row0 > 0 else 0):
        base = apply_to_config(cert.code, base)
    rows = [base]
    for _ in range(height - 1):
        rows.append(apply_to_config(cert.code, rows[-1]))
    grid = tuple(tuple(row.get(col0 + i) for i in range(width)) for row in rows)
    return SpaceTimeWindow(config, cert.code, tuple(rows), width, height,
                           col0, row0, grid)


def rect_complexity(window, n, k):
    """Distinct n x k sub-rectangles of the window (a lower bound on P_eta)."""
    if n < 1 or k < 1:
        raise ValueError("rectangle sides must be >= 1")
    if n > window.width or k > window.height:
        raise ValueError("rectangle exceeds the window")
    seen = set()
    for j in range(window.height - k + 1):
        for i in range(window.width - n + 1):
            seen.add(tuple(window.grid[j + dj][i:i + n] for dj in range(k)))
    return len(seen)


def detect_period_vectors(window, bound):
    """All vectors v with |v1|,|v2| <= bound consistent on the whole window.

    Window-level evidence only; vectors are reported in canonical order.
    """
    if bound < 1:
        raise ValueError("bound must be >= 1")
    if bound >= min(window.width, window.height):
        raise ValueError("bound must be smaller than both window sides")
    found = []
    for v1 in range(-bound, bound + 1):
        for v2 in range(-bound, bound + 1):
            if (v1, v2) == (0, 0):
                continue
            consistent = True
            for j in range(window.height):
                if not 0 <= j + v2 < window.height:
                    continue
                for i in range(window.width):
                    if not 0 <= i + v1 < window.width:
                        continue
                    if window.grid[j][i] != window.grid[j + v2][i + v1]:
                        consistent = False
                        break
                if not consistent:
                    break
            if consistent:
                found.append((v1, v2))
    return tuple(found)


def _shift_exponent(image, probe, bound):
    """t with image == sigma^t probe and |t| <= bound, smallest |t| first."""
    for size in range(bound + 1):
        for t in ((size,) if size == 0 else (size, -size)):
            if image == probe.shift(t):
                return t
    return None


def orbit_preserving(spec, cert, probes, bound):
    """Per-probe shift exponent realizing the code on that probe, or None."""
    results = []
    for probe in probes:
        if not spec.contains_config(probe):
            raise ValueError("probe not in the subshift")
        image = apply_to_config(cert.code, probe)
        results.append(_shift_exponent(image, probe, bound))
    return tuple(results)


@dataclass(frozen=True)
class PowerShiftReport:
    exponent: int   # M
    shifts: tuple   # per-probe t with code^M probe == sigma^t probe


def power_is_shift(spec, cert, probes, m_max, shift_bound):
    """Smallest M <= m_max whose M-th power acts as a shift on every probe."""
    probes = tuple(probes)
    for probe in probes:
        if not spec.contains_config(probe):
            raise ValueError("probe not in the subshift")
        if probe.is_periodic():
            raise ValueError("probes must be aperiodic")
    images = list(probes)
    for exponent in range(1, m_max + 1):
        images = [apply_to_config(cert.code, y) for y in images]
        shifts = [_shift_exponent(img, probe, shift_bound)
                  for img, probe in zip(images, probes)]
        if all(t is not None for t in shifts):
            return PowerShiftReport(exponent, tuple(shifts))
    return None


def grid_lines(window, sep=""):
    """Plain-text rendering, one row per line, top row = smallest iterate."""
    return tuple(sep.join(str(a) for a in row) for row in window.grid)


def window_to_json(window):
    return {"col0": window.col0,
            "row0": window.row0,
            "width": window.width,
            "height": window.height,
            "grid": [list(row) for row in window.grid]}
