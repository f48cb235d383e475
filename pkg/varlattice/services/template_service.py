from pathlib import Path
from typing import Iterable, Optional
import logging

from jinja2 import Environment, FileSystemLoader, TemplateNotFound

from varlattice.core.config import Config
from varlattice.core.errors import InputError
from varlattice.services.lattice_service import FiniteLattice

logger = logging.getLogger(__name__)


class TemplateService:
    def __init__(self, template_dir=None):
        self.template_dir = Path(template_dir or Config.TEMPLATE_DIR)
        # Create Jinja2 environment
        self.env = Environment(
            loader=FileSystemLoader(str(self.template_dir)),
            trim_blocks=True,
            lstrip_blocks=True
        )

    def render_hasse(self, lattice: FiniteLattice, name: str = "lattice",
                     highlight: Optional[Iterable[int]] = None) -> str:
        """Render the Hasse diagram of a lattice as Graphviz DOT."""
        marked = set(highlight or ())
        context = {
            "name": name,
            "nodes": [
                {"id": i, "label": lattice.label(i), "highlight": i in marked, "height": lattice.height[i]}
                for i in range(lattice.size)
            ],
            "edges": [{"lower": a, "upper": b} for a, b in lattice.covers()],
        }

        try:
            template = self.env.get_template("hasse.dot.j2")
        except TemplateNotFound as e:
            raise InputError(f"Template file not found: {self.template_dir / 'hasse.dot.j2'}") from e

        rendered = template.render(**context)
        logger.debug(f"Rendered Hasse diagram {name} with {lattice.size} nodes")
        return rendered
