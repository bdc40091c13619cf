_commands = []


def register_command(command):
    """
    Register a command class so that the application offers it as a sub command.
    :param command: BaseCommand subclass
    :return: None
    """
    if command not in _commands:
        _commands.append(command)


def registered_commands():
    return list(_commands)


def register_core_commands():
    """
    Register the core commands for the system.
    :return: None
    """
    from supertorsion.components.commands import validate_job, compute_cohomology, compute_torsion, self_test

    register_command(validate_job)
    register_command(compute_cohomology)
    register_command(compute_torsion)
    register_command(self_test)
