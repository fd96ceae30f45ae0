"""Application wiring and entry point."""

import sys
from typing import List, Optional

from .presentation import CLIParser, ConsoleInterface
from .services import EvolutionService, SolitaryWaveService, StabilityService


def create_services() -> tuple:
    """Create and configure all services."""
    wave_service = SolitaryWaveService()
    stability_service = StabilityService(wave_service)
    evolution_service = EvolutionService()
    return wave_service, stability_service, evolution_service


def main(argv: Optional[List[str]] = None) -> int:
    """Main entry point."""
    args = CLIParser().parse_args(argv)
    try:
        console = ConsoleInterface(*create_services())
        return console.run(args)
    except KeyboardInterrupt:
        print("\nGoodbye!")
        return 130
    except Exception as e:
        print(f"Error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
