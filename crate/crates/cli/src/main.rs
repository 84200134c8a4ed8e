use clap::Parser;

#[tokio::main]
async fn main() -> anyhow::Result<()> {
    grim_cli::commands::run(grim_cli::commands::Cli::parse()).await
}
