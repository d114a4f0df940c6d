use heatkdv_cli::{run_tool, Tool};

fn main() {
    std::process::exit(run_tool(Tool::Heatinv, std::env::args_os()));
}
