import json
import aiofiles
import logging
from typing import Any, Dict, List, Optional, Tuple
from pathlib import Path

from core.colored_tutte import ColorWeights, color_weights_from_document
from core.errors import InputError
from core.multigraph import LabeledGraph, graph_from_document
from core.polyring import VarRegistry
from core.replacement import ReplacementSpec, spec_from_document

logger = logging.getLogger(__name__)


class DocumentStorage:
    """Loads the JSON documents the commands work on"""

    def __init__(self, data_dir: str = "data"):
        self.data_dir = Path(data_dir)
        self.dual_pairs_file = self.data_dir / "dual_pairs.json"

    async def _read_json(self, filepath: Path, what: str) -> Any:
        """Read a JSON document, turning I/O and syntax problems into input errors"""
        try:
            async with aiofiles.open(filepath, 'r') as f:
                content = await f.read()
        except OSError as e:
            raise InputError(f"cannot read {filepath}: {e.strerror or e}", field=what) from None
        try:
            document = json.loads(content)
        except json.JSONDecodeError as e:
            raise InputError(f"malformed JSON in {filepath} (line {e.lineno}, column {e.colno})",
                             field=what) from None
        logger.debug(f"Read {what} document {filepath}")
        return document

    async def _write_json(self, filepath: Path, data: Dict[str, Any]):
        """Write JSON data to file"""
        try:
            async with aiofiles.open(filepath, 'w') as f:
                await f.write(json.dumps(data, indent=2, sort_keys=True))
        except OSError as e:
            raise InputError(f"cannot write {filepath}: {e.strerror or e}", field="report") from None

    def fixture_path(self, name: str) -> Path:
        """Path of a bundled fixture by file name (".json" optional)"""
        filename = name if name.endswith(".json") else f"{name}.json"
        return self.data_dir / filename

    async def load_graph(self, path: str) -> LabeledGraph:
        document = await self._read_json(Path(path), "graph")
        return graph_from_document(document)

    async def load_colors(self, path: str, registry: Optional[VarRegistry] = None) -> ColorWeights:
        document = await self._read_json(Path(path), "colors")
        return color_weights_from_document(document, registry)

    async def load_spec(self, path: str) -> ReplacementSpec:
        document = await self._read_json(Path(path), "spec")
        return spec_from_document(document)

    async def load_fixture_graph(self, name: str) -> LabeledGraph:
        return await self.load_graph(str(self.fixture_path(name)))

    async def load_dual_pairs(self) -> List[Tuple[str, LabeledGraph, LabeledGraph]]:
        """
        Load the stored dual-pair fixtures

        Returns:
            List of (name, graph, dual) with the dual's signs already flipped
        """
        document = await self._read_json(self.dual_pairs_file, "dual_pairs")
        if not isinstance(document, list):
            raise InputError("dual pairs must be a JSON list", field="dual_pairs")
        pairs = []
        for position, entry in enumerate(document):
            where = f"dual_pairs[{position}]"
            if not isinstance(entry, dict) or not {"name", "graph", "dual"} <= set(entry):
                raise InputError("entry needs name, graph and dual", field=where)
            try:
                pairs.append((entry["name"], graph_from_document(entry["graph"]),
                              graph_from_document(entry["dual"])))
            except InputError as e:
                raise InputError(e.message, field=f"{where}.{e.field}") from None
        logger.info(f"Loaded {len(pairs)} dual pairs")
        return pairs

    async def save_report(self, path: str, report: Dict[str, Any]):
        await self._write_json(Path(path), report)
        logger.info(f"Wrote report to {path}")
