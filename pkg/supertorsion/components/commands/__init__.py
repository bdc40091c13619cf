from supertorsion.components.commands.base_command import BaseCommand
from supertorsion.components.commands.validate_job import validate_job
from supertorsion.components.commands.compute_cohomology import compute_cohomology
from supertorsion.components.commands.compute_torsion import compute_torsion
from supertorsion.components.commands.self_test import self_test
