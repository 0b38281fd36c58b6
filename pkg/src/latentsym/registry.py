import json
from typing import Callable, Dict

from loguru import logger
from pydantic import BaseModel

from latentsym.data_model.simulation import RunConfig
from latentsym.run import cmd_cospectral, cmd_evolve, cmd_spectrum, cmd_sweep

CommandFn = Callable[..., object]


class RegistryInfo(BaseModel):
    """Options for the registry"""

    commands: list[str]


class Registry:
    """Registry for CLI commands"""

    def __init__(self):
        self._commands: Dict[str, CommandFn] = {}

    def register_command(self, command: CommandFn, name: str):
        """Register a command taking (config, console_display)"""
        try:
            if name in self._commands:
                raise ValueError(f"Command {name} already registered")
            self._commands[name] = command
        except Exception as e:
            logger.error(f"Error registering command {name}: {str(e)}")
            raise

    def get_command(self, name: str) -> CommandFn:
        """Get a registered command by name"""
        if name not in self._commands:
            raise KeyError(f"Command {name} not found in registry")
        return self._commands[name]

    def get_commands(self) -> list[str]:
        """Get all registered commands"""
        return list(self._commands.keys())

    def get_info(self) -> RegistryInfo:
        """
        Returns information about the registry.
        """
        return RegistryInfo(commands=self.get_commands())

    def run(self, config: RunConfig, console_display: bool = False):
        """Dispatch a validated run config to its command"""
        command = self.get_command(config.command.value)
        logger.debug(f"Running command {config.command.value}")
        return command(config, console_display=console_display)


# Create a global registry instance
try:
    registry = Registry()
    logger.debug("Registering default commands...")
    registry.register_command(cmd_spectrum, "spectrum")
    registry.register_command(cmd_evolve, "evolve")
    registry.register_command(cmd_sweep, "sweep")
    registry.register_command(cmd_cospectral, "cospectral")
    logger.debug(
        f"Default commands registered successfully. Registry info: {json.dumps(registry.get_info().model_dump(), indent=2)}"
    )
except Exception as e:
    logger.error(f"Error initializing registry: {str(e)}")
