from pathlib import Path


class Repository:
    def __init__(self, out_dir: str | Path | None = None):
        self.out_dir = Path(out_dir) if out_dir is not None else None

    def output_path(self, name: str) -> Path:
        if self.out_dir is None:
            raise ValueError(f"no output directory configured for {name}")
        return self.out_dir / name
