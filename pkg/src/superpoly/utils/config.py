import shutil
import tomllib
from dataclasses import dataclass
from pathlib import Path

import tomli_w

from superpoly.solver.models import SolverConfig, SolverMode

CONFIG_PATH = Path.home() / ".config" / "superpoly" / "config.toml"


@dataclass
class Config:
    solver_mode: str = SolverMode.EXACT_CONTACT.value
    timeout: float = 0.0  # seconds, 0 means no limit
    threads: int = 1
    window: int = 0  # 0 means automatic
    filter_subshapes: bool = True
    cell_size: int = 16
    stroke_width: int = 1

    def solver_config(
        self,
        mode: SolverMode | None = None,
        timeout: float | None = None,
        threads: int | None = None,
    ) -> SolverConfig:
        """Solver settings with command-line values taking precedence."""
        limit = self.timeout if timeout is None else timeout
        return SolverConfig(
            mode=mode or SolverMode(self.solver_mode),
            window=self.window or None,
            time_limit=limit or None,
            workers=threads or self.threads,
            filter_subshapes=self.filter_subshapes,
        )

    def as_items(self) -> list[tuple[str, object]]:
        return [
            ("solver.mode", self.solver_mode),
            ("solver.timeout", self.timeout),
            ("solver.threads", self.threads),
            ("solver.window", self.window),
            ("solver.filter_subshapes", self.filter_subshapes),
            ("render.cell_size", self.cell_size),
            ("render.stroke_width", self.stroke_width),
        ]


def is_first_run() -> bool:
    """Return True if no config file exists yet."""
    return not CONFIG_PATH.exists()


def _backup_corrupt_config() -> None:
    """Move an unparseable config aside so it is never silently overwritten."""
    backup = CONFIG_PATH.with_suffix(CONFIG_PATH.suffix + ".corrupt")
    try:
        shutil.move(str(CONFIG_PATH), str(backup))
    except OSError:
        pass


def load_config() -> Config:
    if not CONFIG_PATH.exists():
        return Config()
    try:
        with open(CONFIG_PATH, "rb") as f:
            data = tomllib.load(f)
    except OSError:
        return Config()
    except tomllib.TOMLDecodeError:
        # Keep the broken file for the user before defaults take over.
        _backup_corrupt_config()
        return Config()
    solver = data.get("solver", {})
    render = data.get("render", {})
    defaults = Config()
    mode = solver.get("mode", defaults.solver_mode)
    if mode not in {m.value for m in SolverMode}:
        mode = defaults.solver_mode
    return Config(
        solver_mode=mode,
        timeout=float(solver.get("timeout", defaults.timeout)),
        threads=max(1, int(solver.get("threads", defaults.threads))),
        window=max(0, int(solver.get("window", defaults.window))),
        filter_subshapes=bool(solver.get("filter_subshapes", defaults.filter_subshapes)),
        cell_size=max(1, int(render.get("cell_size", defaults.cell_size))),
        stroke_width=max(0, int(render.get("stroke_width", defaults.stroke_width))),
    )


def save_config(config: Config) -> None:
    CONFIG_PATH.parent.mkdir(parents=True, exist_ok=True)
    data = {
        "solver": {
            "mode": config.solver_mode,
            "timeout": config.timeout,
            "threads": config.threads,
            "window": config.window,
            "filter_subshapes": config.filter_subshapes,
        },
        "render": {
            "cell_size": config.cell_size,
            "stroke_width": config.stroke_width,
        },
    }
    with open(CONFIG_PATH, "wb") as f:
        tomli_w.dump(data, f)
